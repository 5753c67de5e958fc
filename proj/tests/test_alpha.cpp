#include "doctest.h"

#include "mvph/alpha.hpp"
#include "test_support.hpp"

using namespace mvph;

TEST_CASE("right triangle values") {
    auto fc = global_alpha(build({{0, {0, 0}}, {1, {1, 0}}, {2, {0, 1}}}));
    CHECK(fc.value_of(Simplex::triangle(0, 1, 2)) == doctest::Approx(0.5));
    CHECK(fc.value_of(Simplex::edge(1, 2)) == doctest::Approx(0.5));
    CHECK(fc.value_of(Simplex::edge(0, 1)) == 0.25);
    CHECK(fc.value_of(Simplex::edge(0, 2)) == 0.25);
    for (PointId v : {0u, 1u, 2u}) CHECK(fc.value_of(Simplex::vertex(v)) == 0.0);
    CHECK(fc.is_monotone());
}

TEST_CASE("non-Gabriel edge takes the smaller adjacent triangle value") {
    // (1, 0.2) sits inside the diametral disk of the base edge; (1, -6) keeps the base Delaunay.
    auto tri = build({{0, {0, 0}}, {1, {2, 0}}, {2, {1, 0.2}}, {3, {1, -6}}});
    auto tris = tri.triangles();
    REQUIRE(tris.size() == 2);
    CHECK(tris[0] == Simplex::triangle(0, 1, 2));
    auto fc = global_alpha(tri);
    double upper = fc.value_of(Simplex::triangle(0, 1, 2));
    double lower = fc.value_of(Simplex::triangle(0, 1, 3));
    CHECK(upper == doctest::Approx(6.76));
    CHECK(lower == doctest::Approx(1.0 + (35.0 / 12) * (35.0 / 12)));
    double base = fc.value_of(Simplex::edge(0, 1));
    CHECK(base == std::min(upper, lower));
    CHECK(base > 1.0);
    auto local = local_alpha_with_list(close_under_faces(tris), [&](PointId id) -> const Point2& { return tri.point(id); });
    CHECK(local.non_gabriel == std::vector<Simplex>{Simplex::edge(0, 1)});
}

TEST_CASE("monotone filtrations and local equals global on the full complex") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto pts = seed % 2 ? testing::noisy_circle(200, seed) : testing::uniform_cloud(200, seed);
        auto tri = build(pts);
        auto fc = global_alpha(tri);
        CHECK(fc.is_monotone());
        CHECK(fc.size() == tri.num_vertices() + tri.edges().size() + tri.triangles().size());
        auto local = local_alpha_with_list(close_under_faces(tri.triangles()),
                                           [&](PointId id) -> const Point2& { return tri.point(id); });
        CHECK(local.complex.entries() == fc.entries());
    }
}

TEST_CASE("collinear input gives Gabriel edges only") {
    auto fc = global_alpha(build({{0, {0, 0}}, {1, {1, 0}}, {2, {3, 0}}}));
    CHECK(fc.size() == 5);
    CHECK(fc.value_of(Simplex::edge(1, 2)) == 1.0);
    CHECK(fc.value_of(Simplex::edge(0, 1)) == 0.25);
}
