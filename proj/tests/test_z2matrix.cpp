#include "doctest.h"

#include "mvph/alpha.hpp"
#include "mvph/delaunay.hpp"
#include "mvph/z2matrix.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <map>

using namespace mvph;

namespace {

// Dense reference reducer: twist clearing plus exhaustive elimination of every entry.
std::vector<int> reference_lows(const SparseZ2Matrix& D, const std::vector<int>& dims) {
    int n = D.ncols();
    std::vector<std::vector<char>> cols(n, std::vector<char>(D.nrows, 0));
    for (int j = 0; j < n; ++j)
        for (int r : D.cols[j]) cols[j][r] = 1;
    std::vector<int> lows(n, -1), owner(D.nrows, -1);
    std::vector<char> cleared(n, 0);
    auto dense_low = [&](int j) {
        for (int r = D.nrows - 1; r >= 0; --r)
            if (cols[j][r]) return r;
        return -1;
    };
    for (int d = 2; d >= 0; --d) {
        for (int j = 0; j < n; ++j) {
            if (dims[j] != d || cleared[j]) continue;
            for (int r = D.nrows - 1; r >= 0; --r) {
                if (!cols[j][r] || owner[r] < 0) continue;
                for (int q = 0; q < D.nrows; ++q) cols[j][q] ^= cols[owner[r]][q];
            }
            lows[j] = dense_low(j);
            if (lows[j] >= 0) {
                owner[lows[j]] = j;
                cleared[lows[j]] = 1; // a paired face column reduces to zero
            }
        }
    }
    return lows;
}

int rank_of(std::vector<std::vector<char>> rows) {
    int rank = 0;
    std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][c]) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[pivot], rows[rank]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && rows[r][c])
                for (std::size_t k = 0; k < ncols; ++k) rows[r][k] ^= rows[rank][k];
        ++rank;
    }
    return rank;
}

// Betti number of the sublevel complex at t by ranks of boundary maps.
int betti_at(const FilteredComplex2D& fc, int dim, double t) {
    std::vector<int> faces, cofaces, cells;
    for (int i = 0; i < static_cast<int>(fc.size()); ++i) {
        if (fc.value(i) > t) continue;
        int d = fc.simplex(i).dim();
        if (d == dim) cells.push_back(i);
        if (d == dim - 1) faces.push_back(i);
        if (d == dim + 1) cofaces.push_back(i);
    }
    auto rank_boundary = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
        if (rows.empty() || cols.empty()) return 0;
        std::map<int, int> pos;
        for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i]] = static_cast<int>(i);
        std::vector<std::vector<char>> m(rows.size(), std::vector<char>(cols.size(), 0));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (int r : fc.boundary(cols[c])) m[pos.at(r)][c] = 1;
        return rank_of(m);
    };
    return static_cast<int>(cells.size()) - rank_boundary(faces, cells) - rank_boundary(cells, cofaces);
}

FilteredComplex2D alpha_of(const std::vector<IndexedPoint>& pts) { return global_alpha(build(pts)); }

int alive(const std::vector<Bar>& bars, double t) {
    return static_cast<int>(std::count_if(bars.begin(), bars.end(), [&](const Bar& b) { return b.interval.contains(t); }));
}

} // namespace

TEST_CASE("zero matrix reduces to itself") {
    SparseZ2Matrix D(4, 4);
    auto r = standard_reduce(D);
    CHECK(r.R.is_zero());
    CHECK(r.V == SparseZ2Matrix::identity(4));
}

TEST_CASE("single triangle") {
    auto fc = alpha_of({{0, {0, 0}}, {1, {1, 0}}, {2, {0, 1}}});
    REQUIRE(fc.size() == 7);
    auto p = persistence_with_representatives(fc);
    auto b0 = p.bars_of(0);
    REQUIRE(b0.size() == 3);
    CHECK(b0[0].interval == Interval{0, kInfinity});
    CHECK(b0[1].interval == Interval{0, 0.25});
    CHECK(b0[2].interval == Interval{0, 0.25});
    CHECK(p.bars_of(1).empty()); // [0.5, 0.5) is dropped
    CHECK(b0[0].representative == Column{fc.find(Simplex::vertex(0))});
}

TEST_CASE("single vertex and a square loop") {
    FilteredComplex2D v({{Simplex::vertex(3), 0.0}});
    auto p = persistence_with_representatives(v);
    REQUIRE(p.bars.size() == 1);
    CHECK(p.bars[0].interval == Interval{0, kInfinity});
    CHECK(p.bars[0].representative == Column{0});

    FilteredComplex2D sq({{Simplex::vertex(0), 0}, {Simplex::vertex(1), 0}, {Simplex::vertex(2), 0},
                          {Simplex::vertex(3), 0}, {Simplex::edge(0, 1), 1}, {Simplex::edge(1, 2), 2},
                          {Simplex::edge(2, 3), 3}, {Simplex::edge(0, 3), 4}});
    auto q = persistence_with_representatives(sq);
    auto b1 = q.bars_of(1);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0].interval == Interval{4, kInfinity});
    CHECK(b1[0].representative.size() == 4);
    CHECK(chain_boundary(sq, b1[0].representative).empty());
}

TEST_CASE("R = D V and agreement with the dense reference reducer") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto fc = alpha_of(testing::uniform_cloud(30, seed));
        auto D = boundary_matrix(fc);
        auto red = standard_reduce(D);
        CHECK(red.R == D * red.V);
        std::vector<int> dims;
        for (const Simplex& s : fc.simplices()) dims.push_back(s.dim());
        auto ref = reference_lows(D, dims);
        for (int j = 0; j < D.ncols(); ++j) CHECK(low(red.R.cols[j]) == ref[j]);
    }
}

TEST_CASE("bars count Betti numbers at every filtration value") {
    for (std::uint64_t seed = 20; seed < 26; ++seed) {
        auto fc = alpha_of(testing::noisy_circle(25, seed));
        auto p = persistence_with_representatives(fc);
        std::vector<double> ts(fc.values().begin(), fc.values().end());
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        for (double t : ts)
            for (int d = 0; d <= 1; ++d) CHECK(alive(p.bars_of(d), t) == betti_at(fc, d, t));
    }
}

TEST_CASE("representatives are cycles that stay non-boundaries until death") {
    auto fc = alpha_of(testing::noisy_circle(40, 3));
    auto p = persistence_with_representatives(fc);
    for (const Bar& b : p.bars) {
        CHECK(chain_boundary(fc, b.representative).empty());
        for (int i : b.representative) CHECK(fc.value(i) <= b.interval.birth);
        // just before death it is not a boundary; at death it is
        double before = b.interval.finite() ? std::nextafter(b.interval.death, -kInfinity) : 1e300;
        CHECK_FALSE(solve_chain(fc, p.reduction, b.representative, before).has_value());
        if (b.interval.finite()) {
            auto a = solve_chain(fc, p.reduction, b.representative, b.interval.death);
            REQUIRE(a.has_value());
            CHECK(chain_boundary(fc, *a) == b.representative);
        }
    }
}

TEST_CASE("solve_chain examples") {
    auto fc = alpha_of({{0, {0, 0}}, {1, {1, 0}}, {2, {0, 1}}, {3, {1.1, 1.2}}});
    auto red = standard_reduce(boundary_matrix(fc));
    CHECK(solve_chain(fc, red, {}, 0.0) == Column{});
    int t = fc.find(Simplex::triangle(0, 1, 2));
    auto z = fc.boundary(t);
    CHECK(solve_chain(fc, red, z, fc.value(t)) == Column{t});
    CHECK_FALSE(solve_chain(fc, red, z, std::nextafter(fc.value(t), 0.0)).has_value());
    Column two{fc.find(Simplex::vertex(0)), fc.find(Simplex::vertex(3))};
    std::sort(two.begin(), two.end());
    auto a = solve_chain(fc, red, two, 100.0);
    REQUIRE(a.has_value());
    CHECK(chain_boundary(fc, *a) == two);
    CHECK_FALSE(solve_chain(fc, red, two, 0.0).has_value());
}

TEST_CASE("concentric rings reproduce a 2, 3, 2, 1 rank profile in dimension one") {
    std::vector<IndexedPoint> pts;
    auto add = [&](std::vector<IndexedPoint> r) { pts.insert(pts.end(), r.begin(), r.end()); };
    add(testing::ring(14, 4.0, {0, 0}, 0));      // born ~0.8, dies ~16
    add(testing::ring(9, 2.65, {100, 0}, 100));  // born ~0.8, dies ~7
    add(testing::ring(7, 3.32, {0, 100}, 200));  // born ~2.1, dies ~11
    auto fc = alpha_of(pts);
    auto bars = persistence_with_representatives(fc).bars_of(1);
    CHECK(alive(bars, 1.2) == 2);
    CHECK(alive(bars, 4.6) == 3);
    CHECK(alive(bars, 9.3) == 2);
    CHECK(alive(bars, 12.8) == 1);
}
