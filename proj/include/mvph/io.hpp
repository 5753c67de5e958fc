#pragma once

// Text formats used by the command-line tool.

#include "mvph/oracle.hpp"
#include "mvph/runtime.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mvph {

// One point per line, two reals separated by whitespace. Blank lines and lines starting with '#'
// are skipped. Ids follow input order. Throws ParseError, or DuplicatePoint naming both lines.
std::vector<IndexedPoint> read_points(std::istream& in);

// Shortest round-tripping form up to 17 significant digits; "inf" for infinity.
std::string format_value(double v);

// "dim birth death" per bar in standard order.
void write_bars(std::ostream& out, const Barcode& barcode, int dim);
// Reads lines written by write_bars (any dimensions mixed). Throws ParseError.
Barcode read_bars(std::istream& in);

// "dim birth death origin" where origin lists the zones of the nerve simplex, e.g. "0,2".
void write_localized(std::ostream& out, const std::vector<LocalizedBar>& bars);

// Horizontal barcode plot, dimension 0 in red above dimension 1 in blue.
std::string barcode_svg(const Barcode& barcode);

} // namespace mvph
