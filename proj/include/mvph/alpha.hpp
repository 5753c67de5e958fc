#pragma once

#include "mvph/delaunay.hpp"
#include "mvph/filtered_complex.hpp"

#include <functional>
#include <vector>

namespace mvph {

using PointLookup = std::function<const Point2&(PointId)>;

// Squared circumradius, raised to the largest squared half-edge so rounding can never
// place a triangle below one of its edges.
double triangle_value(const Point2& a, const Point2& b, const Point2& c);
double gabriel_value(const Point2& a, const Point2& b);

// True iff some opposite vertex lies strictly inside the diametral disk of the edge.
bool blocks_edge(const Point2& a, const Point2& b, const Point2& opposite);

struct LocalAlpha {
    FilteredComplex2D complex;
    std::vector<Simplex> non_gabriel; // sorted
};

// Alpha values computed as if the given simplices were the whole complex. The set must be
// closed under faces. Edges are judged against the triangles of this set only.
LocalAlpha local_alpha_with_list(const std::vector<Simplex>& simplices, const PointLookup& point);

FilteredComplex2D global_alpha(const Triangulation& tri);

// Closure under faces of the triangles plus any extra lower-dimensional simplices.
std::vector<Simplex> close_under_faces(const std::vector<Simplex>& simplices);

} // namespace mvph
