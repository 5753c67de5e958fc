#pragma once

#include "mvph/geometry.hpp"
#include "mvph/simplex.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace mvph {

// Incremental Delaunay triangulation under the id-ordered perturbation of in_circle_perturbed.
// Internally uses an infinite vertex so hull edges carry ghost triangles; ghosts never
// appear in the public output.
class Triangulation {
public:
    Triangulation() = default;

    // Throws DuplicatePoint on repeated coordinates or ids.
    static Triangulation build(const std::vector<IndexedPoint>& points);
    void insert(const std::vector<IndexedPoint>& points);

    std::size_t num_vertices() const { return pts_.size(); }
    bool contains(PointId id) const { return local_.count(id) != 0; }
    const Point2& point(PointId id) const;
    std::vector<IndexedPoint> vertices() const;

    // True while the vertex set has fewer than three non-collinear points.
    bool degenerate() const { return degenerate_; }

    // Sorted canonical triangles and edges.
    std::vector<Simplex> triangles() const;
    std::vector<Simplex> edges() const;
    // For each triangle of triangles(), the indices of its neighbours across the edge opposite
    // each sorted vertex; -1 across hull edges.
    std::vector<std::array<int, 3>> adjacency() const;
    // Hull edges as (a, b) with the exterior on the left of a -> b. Empty when degenerate.
    std::vector<std::array<PointId, 2>> hull_edges() const;

private:
    static constexpr int kInf = -1;
    struct Tri {
        std::array<int, 3> v{};
        std::array<int, 3> n{-1, -1, -1};
        bool dead = false;
        bool ghost() const { return v[2] == kInf; }
    };

    void rebuild_from_scratch();
    bool initialise();
    void insert_local(int p);
    int locate(int p);
    bool conflicts(const Tri& t, int p) const;
    int new_tri(std::array<int, 3> v);
    void link_all();
    void add_points(const std::vector<IndexedPoint>& points);
    std::vector<int> hilbert_order(const std::vector<int>& locals) const;

    std::vector<Point2> pts_;
    std::vector<PointId> ids_;
    std::unordered_map<PointId, int> local_;
    std::vector<Tri> tris_;
    std::vector<int> free_;
    bool degenerate_ = true;
    int last_ = -1;
    std::uint64_t walk_state_ = 0x9e3779b97f4a7c15ULL;
};

inline Triangulation build(const std::vector<IndexedPoint>& points) { return Triangulation::build(points); }

inline Triangulation insert(Triangulation tri, const std::vector<IndexedPoint>& points) {
    tri.insert(points);
    return tri;
}

// Per triangle of tri.triangles(): true iff no witness lies strictly inside its circumcircle
// under the perturbed predicate. Witnesses sharing an id with a triangle vertex are skipped.
std::vector<bool> is_delaunay(const Triangulation& tri, const std::vector<IndexedPoint>& witnesses);

} // namespace mvph
