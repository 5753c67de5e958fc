#include "mvph/io.hpp"

#include "mvph/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace mvph {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_real(std::string_view s, double& v) {
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && end == s.data() + s.size() && std::isfinite(v);
}

bool comment_or_blank(const std::vector<std::string_view>& t) { return t.empty() || t[0].front() == '#'; }

} // namespace

std::vector<IndexedPoint> read_points(std::istream& in) {
    std::vector<IndexedPoint> pts;
    std::map<std::pair<double, double>, long> seen;
    std::string line;
    for (long n = 1; std::getline(in, line); ++n) {
        auto t = tokens(line);
        if (comment_or_blank(t)) continue;
        if (t.size() != 2) throw ParseError(n, "expected two coordinates, found " + std::to_string(t.size()) + " fields");
        Point2 p;
        if (!parse_real(t[0], p.x) || !parse_real(t[1], p.y)) throw ParseError(n, "invalid coordinate");
        auto [it, fresh] = seen.emplace(std::pair{p.x, p.y}, n);
        if (!fresh)
            throw DuplicatePoint("line " + std::to_string(n) + " repeats the point on line " + std::to_string(it->second));
        pts.push_back({static_cast<PointId>(pts.size()), p});
    }
    return pts;
}

std::string format_value(double v) {
    if (v == kInfinity) return "inf";
    char buf[64];
    for (int precision = 1; precision <= 17; ++precision) {
        auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
        double back = 0;
        std::from_chars(buf, r.ptr, back);
        if (back == v || precision == 17) return std::string(buf, r.ptr);
    }
    return {};
}

void write_bars(std::ostream& out, const Barcode& barcode, int dim) {
    Barcode b = barcode;
    b.normalize();
    for (const Interval& iv : b.dims[dim])
        out << dim << ' ' << format_value(iv.birth) << ' ' << format_value(iv.death) << '\n';
}

Barcode read_bars(std::istream& in) {
    Barcode b;
    std::string line;
    for (long n = 1; std::getline(in, line); ++n) {
        auto t = tokens(line);
        if (comment_or_blank(t)) continue;
        if (t.size() != 3 || (t[0] != "0" && t[0] != "1")) throw ParseError(n, "expected 'dim birth death'");
        Interval iv;
        if (!parse_real(t[1], iv.birth)) throw ParseError(n, "invalid birth");
        if (t[2] == "inf")
            iv.death = kInfinity;
        else if (!parse_real(t[2], iv.death))
            throw ParseError(n, "invalid death");
        b.dims[t[0] == "1"].push_back(iv);
    }
    b.normalize();
    return b;
}

void write_localized(std::ostream& out, const std::vector<LocalizedBar>& bars) {
    for (const LocalizedBar& b : bars) {
        out << b.dim << ' ' << format_value(b.interval.birth) << ' ' << format_value(b.interval.death) << ' ';
        for (std::size_t i = 0; i < b.origin.size(); ++i) out << (i ? "," : "") << b.origin[i];
        out << '\n';
    }
}

std::string barcode_svg(const Barcode& barcode) {
    Barcode b = barcode;
    b.normalize();
    double top = 0;
    for (const auto& bars : b.dims)
        for (const Interval& iv : bars) top = std::max({top, iv.birth, iv.death == kInfinity ? 0.0 : iv.death});
    if (top <= 0) top = 1;
    const double width = 800, left = 60, span = width - left - 20, row = 4;
    const std::size_t n = b.dims[0].size() + b.dims[1].size();
    const double height = 40 + row * static_cast<double>(n) + 30;
    auto x = [&](double v) { return left + span * std::min(v, top * 1.05) / (top * 1.05); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << height - 25 << "\" x2=\"" << left + span << "\" y2=\"" << height - 25
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left << "\" y=\"" << height - 8 << "\" font-size=\"11\">0</text>\n";
    os << "<text x=\"" << x(top) << "\" y=\"" << height - 8 << "\" font-size=\"11\">" << format_value(top)
       << "</text>\n";
    double y = 30;
    const char* colour[2] = {"red", "blue"};
    for (int d = 0; d < 2; ++d) {
        os << "<text x=\"4\" y=\"" << y + row * 2 << "\" font-size=\"12\" fill=\"" << colour[d] << "\">H" << d
           << "</text>\n";
        for (const Interval& iv : b.dims[d]) {
            const double end = iv.death == kInfinity ? left + span : x(iv.death);
            os << "<line x1=\"" << x(iv.birth) << "\" y1=\"" << y << "\" x2=\"" << std::max(end, x(iv.birth) + 0.5)
               << "\" y2=\"" << y << "\" stroke=\"" << colour[d] << "\" stroke-width=\"2\"/>\n";
            y += row;
        }
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace mvph
