#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "orlizono/harness.hpp"

namespace orlizono {

/// Shortest round-trip-stable text for CSV cells: %.12g.
std::string format_number(double x);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

/// Header: instance,claim,status,value,reference,margin,bars,artifacts,note
std::string verdicts_csv(const std::vector<Verdict>& verdicts);

/// Header: t,value,halfwidth,violation
std::string curve_csv(const Curve& curve);

/// 800x600 line plot of the curve with error bars and red markers at
/// convexity violations.
std::string curve_svg(const Curve& curve);

/// Throws IoError.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace orlizono
