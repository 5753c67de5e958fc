#include "doctest.h"

#include "brute_force.hpp"

#include "mvph/delaunay.hpp"
#include "mvph/errors.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace mvph;
using namespace mvph::testing;

namespace {

std::vector<IndexedPoint> random_cloud(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<IndexedPoint> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<PointId>(i), {u(rng), u(rng)}});
    return pts;
}

// Integer lattice: maximally cocircular and collinear.
std::vector<IndexedPoint> lattice(int w, int h, std::uint64_t seed) {
    std::vector<IndexedPoint> pts;
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < h; ++y) pts.push_back({0, {double(x), double(y)}});
    std::mt19937_64 rng(seed);
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<PointId> ids(pts.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<PointId>(i);
    std::shuffle(ids.begin(), ids.end(), rng);
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i].id = ids[i];
    return pts;
}

void check_euler(const Triangulation& t) {
    CHECK(euler_characteristic(t) == 1);
}

} // namespace

TEST_CASE("small configurations") {
    auto t = build({{0, {0, 0}}, {1, {1, 0}}, {2, {0, 1}}});
    CHECK(t.triangles().size() == 1);
    CHECK(t.edges().size() == 3);
    CHECK(t.hull_edges().size() == 3);

    auto sq = build({{0, {0, 0}}, {1, {1, 0}}, {2, {1, 1}}, {3, {0, 1}}});
    auto tris = sq.triangles();
    REQUIRE(tris.size() == 2);
    CHECK(tris == brute_force_delaunay({{0, {0, 0}}, {1, {1, 0}}, {2, {1, 1}}, {3, {0, 1}}}));
    // Same diagonal regardless of input order.
    auto sq2 = build({{3, {0, 1}}, {2, {1, 1}}, {1, {1, 0}}, {0, {0, 0}}});
    CHECK(sq2.triangles() == tris);
}

TEST_CASE("degenerate inputs produce only vertices and path edges") {
    auto one = build({{5, {1, 1}}});
    CHECK(one.triangles().empty());
    CHECK(one.edges().empty());
    auto line = build({{0, {2, 2}}, {1, {0, 0}}, {2, {1, 1}}, {3, {3, 3}}});
    CHECK(line.degenerate());
    CHECK(line.triangles().empty());
    auto e = line.edges();
    REQUIRE(e.size() == 3);
    CHECK(e[0] == Simplex::edge(0, 2));
    CHECK(e[1] == Simplex::edge(0, 3));
    CHECK(e[2] == Simplex::edge(1, 2));
    // leaving the line makes it two-dimensional
    line.insert({{4, {0, 1}}});
    CHECK_FALSE(line.degenerate());
    check_euler(line);
    CHECK(line.triangles() == brute_force_delaunay(line.vertices()));
}

TEST_CASE("duplicates are rejected") {
    CHECK_THROWS_AS(build({{0, {0, 0}}, {1, {0, 0}}, {2, {1, 1}}}), DuplicatePoint);
    CHECK_THROWS_AS(build({{0, {0, 0}}, {0, {1, 0}}, {2, {1, 1}}}), DuplicatePoint);
    auto t = build({{0, {0, 0}}, {1, {1, 0}}, {2, {0, 1}}});
    CHECK_THROWS_AS(t.insert({{7, {1, 0}}}), DuplicatePoint);
}

TEST_CASE("insertion of an interior point and of nothing") {
    auto t = build({{0, {0, 0}}, {1, {4, 0}}, {2, {0, 4}}});
    auto before = t.triangles();
    t.insert({});
    CHECK(t.triangles() == before);
    t.insert({{3, {1, 1}}});
    CHECK(t.triangles().size() == before.size() + 2);
}

TEST_CASE("random clouds match the brute-force empty-circle triangulation") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto pts = random_cloud(50, seed);
        auto t = build(pts);
        CHECK(t.triangles() == brute_force_delaunay(pts));
        auto ok = is_delaunay(t, pts);
        CHECK(std::all_of(ok.begin(), ok.end(), [](bool b) { return b; }));
        check_euler(t);
    }
}

TEST_CASE("lattices match brute force and are order independent") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto pts = lattice(6, 5, seed);
        auto t = build(pts);
        CHECK(t.triangles() == brute_force_delaunay(pts));
        check_euler(t);
        auto shuffled = pts;
        std::mt19937_64 rng(seed + 100);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(build(shuffled).triangles() == t.triangles());
    }
    // collinear hull points
    std::vector<IndexedPoint> row;
    for (int i = 0; i < 10; ++i) row.push_back({PointId(i), {double(i), 0.0}});
    row.push_back({10, {4.5, 1.0}});
    auto t = build(row);
    CHECK(t.triangles() == brute_force_delaunay(row));
    check_euler(t);
}

TEST_CASE("build then insert equals build all") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto pts = random_cloud(60, seed + 1000);
        std::vector<IndexedPoint> first(pts.begin(), pts.begin() + 40), rest(pts.begin() + 40, pts.end());
        auto t = build(first);
        t.insert(rest);
        CHECK(t.triangles() == build(pts).triangles());
        CHECK(t.edges() == build(pts).edges());
    }
}

TEST_CASE("is_delaunay flags a witness at a circumcentre") {
    auto pts = random_cloud(20, 3);
    auto t = build(pts);
    auto tris = t.triangles();
    auto cd = circumdata_triangle(t.point(tris[0].v[0]), t.point(tris[0].v[1]), t.point(tris[0].v[2]));
    auto ok = is_delaunay(t, {{999, cd.center}});
    CHECK_FALSE(ok[0]);
    std::vector<IndexedPoint> own;
    for (PointId id : tris[0].v) own.push_back({id, t.point(id)});
    ok = is_delaunay(t, own);
    CHECK(std::all_of(ok.begin(), ok.end(), [](bool b) { return b; }));
}

TEST_CASE("adjacency is symmetric") {
    auto t = build(random_cloud(100, 9));
    auto tris = t.triangles();
    auto adj = t.adjacency();
    int hull = 0;
    for (std::size_t i = 0; i < tris.size(); ++i)
        for (int s = 0; s < 3; ++s) {
            int nb = adj[i][s];
            if (nb < 0) {
                ++hull;
                continue;
            }
            auto& other = adj[nb];
            CHECK(std::count(other.begin(), other.end(), int(i)) == 1);
            CHECK_FALSE(tris[nb].has_vertex(tris[i].v[s]));
        }
    CHECK(hull == static_cast<int>(t.hull_edges().size()));
}

TEST_CASE("large cloud builds quickly") {
    auto pts = random_cloud(50000, 5);
    auto t = build(pts);
    CHECK(t.triangles().size() > 99000);
    check_euler(t);
}
