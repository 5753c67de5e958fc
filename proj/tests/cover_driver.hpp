#pragma once

// Sequential stand-in for the worker exchange, used to test the cover pieces in isolation.

#include "mvph/alpha.hpp"
#include "mvph/cover.hpp"

#include <map>
#include <set>
#include <string>

namespace mvph::testing {

struct CoverRun {
    GridLayout layout;
    std::vector<SubcomplexK> ks;
    std::vector<std::vector<OwnerRecord>> owners; // per zone, every simplex of K_zone
    std::map<ZoneSet, std::vector<Simplex>> intersections;
    NerveComplex nerve;
};

inline CoverRun run_cover(const std::vector<IndexedPoint>& points, int m1, int m2, int density) {
    CoverRun run;
    run.layout = compute_grid(points, m1, m2, density);
    const Grid& grid = run.layout.grid;
    const ZoneAssignment& za = run.layout.assignment;
    const int M = m1 * m2;
    auto zone_of = [&](PointId id) { return za.zone_of(id); };

    std::vector<IndexedPoint> hull;
    for (const auto& zp : za.zone_points) {
        auto h = hull_points(zp);
        hull.insert(hull.end(), h.begin(), h.end());
    }
    auto keys = hull_edge_keys(hull);

    std::vector<ZoneExpansion> ex;
    for (int z = 0; z < M; ++z) ex.emplace_back(grid, za.cell_counts, keys, z, za.zone_points[z]);
    for (bool busy = true; busy;) {
        busy = false;
        for (int z = 0; z < M; ++z) {
            if (ex[z].stable()) continue;
            busy = true;
            auto ring = ex[z].next_ring();
            std::vector<IndexedPoint> layer;
            for (int j = 0; j < M; ++j) {
                auto part = points_in_cells(grid, za.zone_points[j], ring);
                layer.insert(layer.end(), part.begin(), part.end());
            }
            ex[z].add_layer(layer);
        }
    }
    for (int z = 0; z < M; ++z) run.ks.push_back(ex[z].result());

    std::map<std::uint64_t, ZoneSet> announced;
    std::vector<std::vector<OwnerRecord>> home(M);
    for (int z = 0; z < M; ++z) {
        home[z] = home_owner_records(run.ks[z], zone_of);
        for (const OwnerRecord& r : home[z])
            if (announcing_zone(r.simplex, zone_of) == z) announced[r.simplex.key()] = r.owners;
    }
    std::vector<int> nonempty;
    std::vector<IntersectionComplex> all;
    for (int z = 0; z < M; ++z) {
        auto recs = home[z];
        for (const Simplex& s : foreign_simplices(run.ks[z], zone_of)) recs.push_back({s, announced.at(s.key())});
        std::sort(recs.begin(), recs.end(), [](const OwnerRecord& a, const OwnerRecord& b) { return a.simplex < b.simplex; });
        run.owners.push_back(recs);
        if (!run.ks[z].simplices.empty()) nonempty.push_back(z);
        for (auto& ic : intersections_for_zone(z, recs)) {
            auto [it, fresh] = run.intersections.emplace(ic.zones, ic.simplices);
            if (!fresh && it->second != ic.simplices) throw std::runtime_error("zones disagree on an intersection");
            all.push_back(std::move(ic));
        }
    }
    run.nerve = build_nerve(nonempty, all);
    return run;
}

// K_i straight from the definition: closure of the triangles of D(X) with a vertex in zone i.
inline std::vector<std::vector<Simplex>> brute_force_cover(const Triangulation& global, const ZoneAssignment& za, int M) {
    std::vector<std::vector<Simplex>> tris(M);
    for (const Simplex& t : global.triangles()) {
        std::set<int> zs{za.zone_of(t.v[0]), za.zone_of(t.v[1]), za.zone_of(t.v[2])};
        for (int z : zs) tris[z].push_back(t);
    }
    for (auto& t : tris) t = close_under_faces(t);
    return tris;
}

inline std::vector<Simplex> intersect(const std::vector<Simplex>& a, const std::vector<Simplex>& b) {
    std::vector<Simplex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Every way the computed cover departs from its definition; empty when it is correct.
inline std::vector<std::string> cover_violations(const std::vector<IndexedPoint>& pts, int m1, int m2, int density) {
    std::vector<std::string> out;
    auto fail = [&](const std::string& what) { out.push_back(what); };
    auto run = run_cover(pts, m1, m2, density);
    const int M = m1 * m2;
    auto global = Triangulation::build(pts);
    auto expected = brute_force_cover(global, run.layout.assignment, M);
    std::set<Simplex> united;
    for (int z = 0; z < M; ++z) {
        const std::string zone = "zone " + std::to_string(z);
        if (run.ks[z].simplices != expected[z]) fail(zone + ": K differs from the closure of its Delaunay star");
        united.insert(run.ks[z].simplices.begin(), run.ks[z].simplices.end());
        auto ok = is_delaunay(run.ks[z].local, pts);
        auto local_tris = run.ks[z].local.triangles();
        for (const Simplex& t : run.ks[z].triangles) {
            auto it = std::lower_bound(local_tris.begin(), local_tris.end(), t);
            if (it == local_tris.end() || *it != t || !ok[it - local_tris.begin()])
                fail(zone + ": triangle not Delaunay in the full cloud");
        }
    }
    if (std::vector<Simplex>(united.begin(), united.end()) != close_under_faces(global.triangles()))
        fail("union of the zone complexes is not the Delaunay complex");

    std::map<ZoneSet, std::vector<Simplex>> bf;
    for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j) {
            auto ij = intersect(expected[i], expected[j]);
            if (!ij.empty()) bf[{i, j}] = ij;
            for (int k = j + 1; k < M; ++k) {
                auto ijk = intersect(ij, expected[k]);
                if (!ijk.empty()) bf[{i, j, k}] = ijk;
            }
        }
    if (run.intersections != bf) fail("intersections differ from set intersections");

    // intersection simplices are faces of boundary triangles of every zone involved
    for (const auto& [zs, simplices] : run.intersections)
        for (int z : zs) {
            std::vector<Simplex> boundary;
            for (std::size_t t = 0; t < run.ks[z].triangles.size(); ++t)
                if (run.ks[z].classes[t] == TriangleClass::Boundary) boundary.push_back(run.ks[z].triangles[t]);
            if (intersect(simplices, close_under_faces(boundary)) != simplices)
                fail("intersection simplex outside the boundary triangles of zone " + std::to_string(z));
        }

    // four-fold intersections hold no triangles, five-fold ones only vertices
    for (const auto& rec_list : run.owners)
        for (const OwnerRecord& r : rec_list) {
            if (r.owners.size() >= 4 && r.simplex.dim() > 1) fail("triangle shared by four zones");
            if (r.owners.size() >= 5 && r.simplex.dim() > 0) fail("edge shared by five zones");
        }

    for (const ZoneSet& e : run.nerve.edges)
        for (int z : e)
            if (!std::binary_search(run.nerve.vertices.begin(), run.nerve.vertices.end(), ZoneSet{z}))
                fail("nerve edge without its vertex");
    for (const ZoneSet& t : run.nerve.triangles)
        for (auto e : {ZoneSet{t[0], t[1]}, ZoneSet{t[0], t[2]}, ZoneSet{t[1], t[2]}})
            if (!std::binary_search(run.nerve.edges.begin(), run.nerve.edges.end(), e)) fail("nerve triangle without its edge");
    if (!std::is_sorted(run.nerve.edges.begin(), run.nerve.edges.end())) fail("nerve edges unsorted");
    return out;
}

} // namespace mvph::testing
