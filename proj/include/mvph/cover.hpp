#pragma once

#include "mvph/delaunay.hpp"
#include "mvph/geometry.hpp"
#include "mvph/simplex.hpp"

#include <array>
#include <unordered_map>
#include <vector>

namespace mvph {

struct GridSpec {
    int m1 = 1, m2 = 1; // zones per axis
    int density = 1000; // target average points per cell
    int cells_x = 1, cells_y = 1; // cells per zone along each axis
    double cell_width = 0.0, cell_height = 0.0;

    int num_zones() const { return m1 * m2; }
};

// Half-open range of cell indices.
struct CellRange {
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool contains(int cx, int cy) const { return x0 <= cx && cx < x1 && y0 <= cy && cy < y1; }
    friend bool operator==(const CellRange&, const CellRange&) = default;
};

class Grid {
public:
    Grid() = default;
    Grid(BoundingBox box, GridSpec spec);

    const BoundingBox& box() const { return box_; }
    const GridSpec& spec() const { return spec_; }
    int nx() const { return spec_.m1 * spec_.cells_x; }
    int ny() const { return spec_.m2 * spec_.cells_y; }
    int num_cells() const { return nx() * ny(); }
    int cell_index(int cx, int cy) const { return cy * nx() + cx; }
    // Cell containing p under the half-open rule; p must lie in box().
    std::array<int, 2> cell_of(const Point2& p) const;
    int zone_of_cell(int cx, int cy) const { return (cy / spec_.cells_y) * spec_.m1 + cx / spec_.cells_x; }
    int zone_of(const Point2& p) const;
    CellRange zone_cells(int zone) const;
    BoundingBox zone_box(int zone) const;
    BoundingBox cell_box(int cx, int cy) const;
    // Cell range grown by `rings` cells on every side, clipped to the grid.
    CellRange grown(const CellRange& r, int rings) const;
    bool covers_grid(const CellRange& r) const { return r.x0 == 0 && r.y0 == 0 && r.x1 == nx() && r.y1 == ny(); }

private:
    BoundingBox box_;
    GridSpec spec_;
    std::vector<double> xs_, ys_; // cell boundaries
};

struct ZoneAssignment {
    std::vector<std::vector<IndexedPoint>> zone_points; // sorted by id
    std::vector<int> cell_counts;                       // points per cell
    std::unordered_map<PointId, int> zone_of_point;

    int zone_of(PointId id) const { return zone_of_point.at(id); }
};

struct GridLayout {
    Grid grid;
    ZoneAssignment assignment;
};

// Pads the tight bounding box by a relative margin so no point lies on its boundary.
// Throws std::invalid_argument on empty input or non-positive parameters.
GridLayout compute_grid(const std::vector<IndexedPoint>& points, int m1, int m2, int density);

enum class TriangleClass { Inner, Boundary, Outer };

template <class ZoneOf>
TriangleClass classify_triangle(const Simplex& t, int zone, const ZoneOf& zone_of) {
    int in = 0;
    for (PointId v : t.v) in += zone_of(v) == zone;
    return in == 3 ? TriangleClass::Inner : in == 0 ? TriangleClass::Outer : TriangleClass::Boundary;
}

// Points on the convex hull boundary, including those in the interior of hull edges. Enough to
// recover the hull of a superset's hull.
std::vector<IndexedPoint> hull_points(const std::vector<IndexedPoint>& points);

// Sorted keys (Simplex::edge) of the hull edges of the Delaunay triangulation: consecutive
// boundary points, or the sorted path when all points are collinear.
std::vector<std::uint64_t> hull_edge_keys(const std::vector<IndexedPoint>& points);

struct SubcomplexK {
    int zone = 0;
    CellRange box;
    int rounds = 0;
    Triangulation local; // triangulation of every point gathered by the zone
    std::vector<Simplex> triangles;
    std::vector<TriangleClass> classes; // per triangle: Inner or Boundary
    std::vector<Simplex> simplices;     // closure of triangles, sorted
};

// Iterative construction of K_i for one zone. Each round adds one ring of grid cells.
// Cells known to be empty are skipped without a round.
class ZoneExpansion {
public:
    ZoneExpansion(const Grid& grid, const std::vector<int>& cell_counts, std::vector<std::uint64_t> global_hull_edges,
                  int zone, const std::vector<IndexedPoint>& own_points);

    // True when every triangle incident to the zone is certified Delaunay for the full cloud.
    bool stable() const { return stable_; }
    int rounds() const { return rounds_; }
    const CellRange& box() const { return box_; }
    // Cells of the next ring that hold points. Only meaningful while !stable().
    std::vector<std::array<int, 2>> next_ring() const;
    // Inserts the points of next_ring() and re-evaluates the stop rule.
    void add_layer(const std::vector<IndexedPoint>& points);

    SubcomplexK result() const;

private:
    void evaluate();
    void skip_empty_rings();
    bool disk_reaches_unknown(const Circumdata& c) const;

    const Grid* grid_;
    const std::vector<int>* cell_counts_;
    std::vector<std::uint64_t> hull_edges_; // sorted
    int zone_;
    std::vector<PointId> own_ids_;          // sorted
    Triangulation tri_;
    CellRange box_;
    int rounds_ = 0;
    bool stable_ = false;
};

// Points of `zone_points` lying in the given cells.
std::vector<IndexedPoint> points_in_cells(const Grid& grid, const std::vector<IndexedPoint>& zone_points,
                                          const std::vector<std::array<int, 2>>& cells);

// Sorted zone ids.
using ZoneSet = std::vector<int>;

struct OwnerRecord {
    Simplex simplex;
    ZoneSet owners; // zones whose K contains the simplex
};

// Owners of every simplex of K_i that has a vertex in the zone, read off its full star.
template <class ZoneOf>
std::vector<OwnerRecord> home_owner_records(const SubcomplexK& k, const ZoneOf& zone_of);

// Simplices of K_i with no vertex in the zone; their owners must come from a home worker.
template <class ZoneOf>
std::vector<Simplex> foreign_simplices(const SubcomplexK& k, const ZoneOf& zone_of) {
    std::vector<Simplex> out;
    for (const Simplex& s : k.simplices) {
        bool home = false;
        for (int i = 0; i <= s.dim(); ++i) home = home || zone_of(s.v[i]) == k.zone;
        if (!home) out.push_back(s);
    }
    return out;
}

// Smallest zone among the vertices of s: the home worker responsible for announcing owners.
template <class ZoneOf>
int announcing_zone(const Simplex& s, const ZoneOf& zone_of) {
    int z = zone_of(s.v[0]);
    for (int i = 1; i <= s.dim(); ++i) z = std::min(z, zone_of(s.v[i]));
    return z;
}

struct IntersectionComplex {
    ZoneSet zones; // |zones| in {2, 3}
    std::vector<Simplex> simplices; // sorted
    std::vector<bool> critical;     // per simplex: not a face of a triangle of the intersection
};

// All intersections K_sigma with zone in sigma and |sigma| in {2,3}, built from the owners of
// every simplex of K_zone. Throws ProtocolError if a simplex has no owner record.
std::vector<IntersectionComplex> intersections_for_zone(int zone, const std::vector<OwnerRecord>& owners);

// Marks simplices that are not faces of a triangle within the set.
std::vector<bool> critical_flags(const std::vector<Simplex>& sorted_simplices);

struct NerveComplex {
    std::vector<ZoneSet> vertices, edges, triangles; // lexicographic

    const std::vector<ZoneSet>& of_dim(int p) const { return p == 0 ? vertices : p == 1 ? edges : triangles; }
    int dimension() const { return !triangles.empty() ? 2 : !edges.empty() ? 1 : vertices.empty() ? -1 : 0; }
};

// Nerve of the nonempty K_i and intersections.
NerveComplex build_nerve(const std::vector<int>& nonempty_zones, const std::vector<IntersectionComplex>& intersections);

// ---------------------------------------------------------------------------------------------

template <class ZoneOf>
std::vector<OwnerRecord> home_owner_records(const SubcomplexK& k, const ZoneOf& zone_of) {
    std::unordered_map<std::uint64_t, ZoneSet> owners;
    auto note = [&](const Simplex& s, const ZoneSet& zs) {
        ZoneSet& o = owners[s.key()];
        o.insert(o.end(), zs.begin(), zs.end());
    };
    for (const Simplex& t : k.triangles) {
        ZoneSet zs{zone_of(t.v[0]), zone_of(t.v[1]), zone_of(t.v[2])};
        note(t, zs);
        for (const Simplex& e : t.facets()) {
            note(e, zs);
            for (const Simplex& v : e.facets()) note(v, zs);
        }
    }
    std::vector<OwnerRecord> out;
    for (const Simplex& s : k.simplices) {
        bool home = false;
        for (int i = 0; i <= s.dim(); ++i) home = home || zone_of(s.v[i]) == k.zone;
        if (!home) continue;
        ZoneSet zs = owners.at(s.key());
        std::sort(zs.begin(), zs.end());
        zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
        out.push_back({s, std::move(zs)});
    }
    return out;
}

} // namespace mvph
