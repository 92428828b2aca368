#include "minkhelix/curve_io.hpp"

#include "minkhelix/error.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace minkhelix {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what)
{
    Error e(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
    e.line = line;
    throw e;
}

void check_format(const std::string& format)
{
    if (format != "csv") fail(ErrorKind::InvalidSpec, "unsupported curve format '" + format + "'");
}

}  // namespace

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SampledCurve read_curve_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) parse_error(1, "empty input, expected header 's,x1,x2,x3,x4'");
    ++line_no;
    {
        std::string header;
        for (char ch : trim(line))
            if (ch != ' ') header.push_back(ch);
        if (header != "s,x1,x2,x3,x4") parse_error(line_no, "expected header 's,x1,x2,x3,x4'");
    }

    std::vector<double> s;
    std::vector<Vec4> points;
    while (std::getline(in, line)) {
        ++line_no;
        const auto row = trim(line);
        if (row.empty()) continue;
        double fields[5];
        std::size_t count = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = row.find(',', start);
            const auto token = trim(row.substr(start, comma == std::string_view::npos ? row.npos : comma - start));
            if (count < 5) {
                double v = 0.0;
                const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
                if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
                    parse_error(line_no, "cannot parse '" + std::string(token) + "' as a number");
                fields[count] = v;
            }
            ++count;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (count != 5) {
            Error e(ErrorKind::DimensionMismatch, "line " + std::to_string(line_no) + ": expected s plus 4 coordinates, got " +
                                                      std::to_string(count) + " fields");
            e.line = line_no;
            throw e;
        }
        s.push_back(fields[0]);
        points.emplace_back(fields[1], fields[2], fields[3], fields[4]);
    }
    if (s.empty()) fail(ErrorKind::GridTooShort, "curve file has no samples");
    SampledCurve curve;
    if (s.size() == 1) {
        curve.grid = {s[0], 1.0, 1};
    } else {
        curve.grid = UniformGrid::from_abscissae(s);
    }
    curve.points = std::move(points);
    return curve;
}

void write_curve_csv(const SampledCurve& curve, std::ostream& out)
{
    out << "s,x1,x2,x3,x4\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const Vec4& p = curve.points[i];
        out << format_double(curve.grid.at(i)) << ',' << format_double(p[0]) << ',' << format_double(p[1]) << ','
            << format_double(p[2]) << ',' << format_double(p[3]) << '\n';
    }
}

SampledCurve load_curve(const std::filesystem::path& path, const std::string& format)
{
    check_format(format);
    std::ifstream in(path);
    if (!in) fail(ErrorKind::FileNotFound, "cannot open curve file '" + path.string() + "'");
    return read_curve_csv(in);
}

void save_curve(const SampledCurve& curve, const std::filesystem::path& path, const std::string& format)
{
    check_format(format);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::FileNotFound, "cannot write curve file '" + path.string() + "'");
    write_curve_csv(curve, out);
    if (!out) fail(ErrorKind::FileNotFound, "write failed for '" + path.string() + "'");
}

}  // namespace minkhelix
