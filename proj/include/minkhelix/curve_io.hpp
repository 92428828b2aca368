#pragma once

#include "minkhelix/curve.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace minkhelix {

/// Curve CSV: header `s,x1,x2,x3,x4`, one sample per line, values written
/// with 17 significant digits so that a save/load round trip is exact.
SampledCurve read_curve_csv(std::istream& in);
void write_curve_csv(const SampledCurve& curve, std::ostream& out);

/// `format` is "csv" (the only supported format).
SampledCurve load_curve(const std::filesystem::path& path, const std::string& format = "csv");
void save_curve(const SampledCurve& curve, const std::filesystem::path& path, const std::string& format = "csv");

/// Decimal text with 17 significant digits, as used in every CSV we write.
std::string format_double(double v);

}  // namespace minkhelix
