#pragma once

// Hand-encoded worked examples: a five-bar codomain with a three-bar subcomplex, and the
// four-circle quotient with its extension columns.

#include "mvph/barcode_algebra.hpp"
#include "mvph/simplex.hpp"

#include <vector>

namespace mvph::fixtures {

// Codomain bars beta_1..beta_5 in standard order.
inline std::vector<Interval> example_betas() {
    return {{0.3, 1.0}, {0.5, 20.0}, {0.8, 7.0}, {1.3, 12.3}, {1.5, 3.0}};
}

// Domain bars alpha_1..alpha_3.
inline std::vector<Interval> example_alphas() { return {{0.4, 1.0}, {0.9, 7.0}, {2.0, 20.0}}; }

// Each codomain bar is its own cycle; the domain cycles embed as beta_1, beta_3 and
// beta_1 + beta_2 + beta_3 + beta_4 (beta_1 is already a boundary at 2.0).
inline MorphismMatrix example_associated_matrix() {
    auto betas = example_betas();
    CycleLookup lk;
    for (int i = 0; i < 5; ++i) lk.by_low.push_back({{i}, betas[i].death, i, true});
    auto alphas = example_alphas();
    return associated_matrix({{alphas[0], {0}}, {alphas[1], {2}}, {alphas[2], {0, 1, 2, 3}}}, lk, betas);
}

// First-page generators of the (0,1) term, gamma_1..gamma_8 (already in endpoint order).
inline std::vector<Interval> circle_gammas() {
    return {{0.67, 0.86}, {0.79, 1.006}, {2.37, 2.77}, {2.71, 3.38},
            {2.71, 12.21}, {1.007, 12.35}, {1.63, 12.51}, {3.63, 12.52}};
}

// Second-page (1,0) generators beta_1, beta_2.
inline std::vector<Interval> circle_betas() { return {{0.58, 3.63}, {0.60, 2.71}}; }

// Extension coordinates in gamma_1..gamma_8 of beta_1 and beta_2.
inline std::vector<Coords> circle_extension_columns() { return {{7}, {2, 3, 4, 5, 6}}; }

struct BoxLayout {
    SparseZ2Matrix matrix;
    std::vector<double> lbirths;
    std::vector<double> ldeaths;
};

// Columns: D(beta_2), D(beta_1) | B(beta_1), B(beta_2), gamma_1, gamma_2, gamma_6, gamma_7,
// gamma_3, gamma_5, gamma_4, gamma_8. Rows: gamma_1..gamma_8, B(beta_1), B(beta_2).
inline BoxLayout circle_box() {
    const std::vector<std::vector<int>> one_based = {
        {3, 4, 5, 6, 7, 10}, {8, 9}, {9}, {10}, {1}, {2}, {6}, {7}, {3}, {5}, {4}, {8}};
    BoxLayout b;
    b.matrix = SparseZ2Matrix(10, 12);
    for (int c = 0; c < 12; ++c)
        for (int r : one_based[c]) b.matrix.cols[c].push_back(r - 1);
    b.lbirths = {2.71, 3.63, 0.58, 0.60, 0.67, 0.79, 1.007, 1.63, 2.37, 2.71, 2.71, 3.63};
    b.ldeaths = {0.86, 1.006, 2.77, 3.38, 12.21, 12.35, 12.51, 12.52, kInfinity, kInfinity};
    return b;
}

// Per trailing column; the last two are empty.
inline std::vector<Interval> circle_box_intervals() {
    return {{0.58, 12.52}, {0.60, 12.51}, {0.67, 0.86}, {0.79, 1.006}, {1.007, 12.35},
            {1.63, 12.21}, {2.37, 2.77}, {2.71, 3.38}, {2.71, 2.71}, {3.63, 3.63}};
}

inline std::vector<double> circle_box_lbirths() {
    return {2.71, 3.63, 3.63, 2.71, 0.67, 0.79, 1.007, 2.71, 2.37, 2.71, 2.71, 3.63};
}

// The nonempty quotient bars in standard order.
inline std::vector<Interval> circle_quotient_bars() {
    return {{0.58, 12.52}, {0.60, 12.51}, {0.67, 0.86}, {0.79, 1.006},
            {1.007, 12.35}, {1.63, 12.21}, {2.37, 2.77}, {2.71, 3.38}};
}

// Edge (0, 1) lies in the right zone of a 2x1 grid. The left zone sees it only through the
// triangle (0, 1, 3), while vertex 2, which blocks it, sits on the right.
inline std::vector<IndexedPoint> hidden_blocker() {
    return {{0, {0.1, -1.0}}, {1, {0.1, 1.0}}, {2, {0.3, 0.0}}, {3, {-20.0, 0.0}}, {4, {20.0, 0.0}}};
}

// On a 2x2 grid with density 1, zone 0 holds a loop that is filled only by triangles spread over
// other zones, and no double intersection carries the loop. Found by exhaustive search over
// 8-point clouds.
inline std::vector<IndexedPoint> hidden_hole() {
    return {{0, {-0.5, 0.1}}, {1, {-0.5, -1.7}}, {2, {-1.8, -1.2}}, {3, {-1.4, -0.2}},
            {4, {1.3, 1.8}},  {5, {-0.1, -0.3}}, {6, {-0.6, 0.1}},  {7, {0.0, -0.5}}};
}

} // namespace mvph::fixtures
