#include "orlizono/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orlizono/error.hpp"

namespace orlizono {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string verdicts_csv(const std::vector<Verdict>& verdicts) {
  std::ostringstream os;
  os << "instance,claim,status,value,reference,margin,bars,artifacts,note\n";
  for (const auto& v : verdicts) {
    std::string artifacts;
    for (std::size_t i = 0; i < v.artifacts.size(); ++i) artifacts += (i ? ";" : "") + v.artifacts[i];
    os << csv_field(v.instance) << ',' << csv_field(v.claim) << ',' << status_name(v.status) << ','
       << format_number(v.value) << ',' << format_number(v.reference) << ',' << format_number(v.margin) << ','
       << format_number(v.bars) << ',' << csv_field(artifacts) << ',' << csv_field(v.note) << '\n';
  }
  return os.str();
}

std::string curve_csv(const Curve& curve) {
  std::ostringstream os;
  os << "t,value,halfwidth,violation\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const bool bad = std::find(curve.violations.begin(), curve.violations.end(), static_cast<int>(i)) !=
                     curve.violations.end();
    const auto& p = curve.points[i];
    os << format_number(p.t) << ',' << format_number(p.y) << ',' << format_number(p.halfwidth) << ','
       << (bad ? 1 : 0) << '\n';
  }
  return os.str();
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string curve_svg(const Curve& curve) {
  constexpr double kWidth = 800, kHeight = 600;
  constexpr double kLeft = 90, kRight = 30, kTop = 50, kBottom = 70;
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;

  double t0 = 0, t1 = 1, y0 = 0, y1 = 1;
  if (!curve.points.empty()) {
    t0 = t1 = curve.points.front().t;
    y0 = y1 = curve.points.front().y;
    for (const auto& p : curve.points) {
      t0 = std::min(t0, p.t);
      t1 = std::max(t1, p.t);
      y0 = std::min(y0, p.y - p.halfwidth);
      y1 = std::max(y1, p.y + p.halfwidth);
    }
  }
  if (t1 - t0 <= 0) t1 = t0 + 1;
  const double pad = y1 - y0 > 0 ? 0.08 * (y1 - y0) : std::max(1e-12, 0.05 * std::abs(y0) + 1e-12);
  y0 -= pad;
  y1 += pad;
  auto sx = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * plot_w; };
  auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * plot_h; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">"
     << xml_escape(curve.name) << "</text>\n";
  os << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\"" << px(plot_w) << "\" height=\""
     << px(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double t = t0 + (t1 - t0) * k / 4.0, y = y0 + (y1 - y0) * k / 4.0;
    os << "<text x=\"" << px(sx(t)) << "\" y=\"" << px(kTop + plot_h + 20)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << format_number(t) << "</text>\n";
    os << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(sy(y) + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(format_number(y))
       << "</text>\n";
    os << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(sy(y)) << "\" x2=\"" << px(kLeft + plot_w) << "\" y2=\""
       << px(sy(y)) << "\" stroke=\"#dddddd\"/>\n";
  }
  os << "<text x=\"400\" y=\"" << px(kHeight - 20)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">t</text>\n";
  os << "<text x=\"20\" y=\"300\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
        "transform=\"rotate(-90 20 300)\">"
     << xml_escape(curve.y_label) << "</text>\n";
  if (!curve.points.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i)
      os << (i ? " " : "") << px(sx(curve.points[i].t)) << ',' << px(sy(curve.points[i].y));
    os << "\"/>\n";
  }
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    const bool bad = std::find(curve.violations.begin(), curve.violations.end(), static_cast<int>(i)) !=
                     curve.violations.end();
    os << "<line x1=\"" << px(sx(p.t)) << "\" y1=\"" << px(sy(p.y - p.halfwidth)) << "\" x2=\"" << px(sx(p.t))
       << "\" y2=\"" << px(sy(p.y + p.halfwidth)) << "\" stroke=\"#888888\"/>\n";
    os << "<circle cx=\"" << px(sx(p.t)) << "\" cy=\"" << px(sy(p.y)) << "\" r=\"" << (bad ? "7" : "4")
       << "\" fill=\"" << (bad ? "#d62728" : "#1f4e99") << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

}  // namespace orlizono
