#pragma once

#include "mvph/interval.hpp"
#include "mvph/simplex.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mvph {

// Nonempty bars of dimensions 0 and 1, each list in standard order.
struct Barcode {
    std::array<std::vector<Interval>, 2> dims;

    void normalize(); // drops empty bars and sorts
    friend bool operator==(const Barcode&, const Barcode&) = default;
};

// Full Delaunay triangulation, alpha filtration and a single standard reduction.
// Throws std::invalid_argument on empty input.
Barcode sequential_persistence(const std::vector<IndexedPoint>& points);

struct Comparison {
    bool match = true;
    int dim = -1;                  // first dimension that differs
    std::optional<Interval> left, right; // first differing pair; one side absent on a count mismatch

    std::string describe() const;
};

// Pairs bars position by position after sorting; bars match iff both ends differ by at most tol
// (an infinite end only matches an infinite end).
Comparison compare(const Barcode& a, const Barcode& b, double tol);

} // namespace mvph
