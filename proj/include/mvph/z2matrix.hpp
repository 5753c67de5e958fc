#pragma once

#include "mvph/filtered_complex.hpp"
#include "mvph/interval.hpp"

#include <optional>
#include <vector>

namespace mvph {

// Sorted row indices of the nonzero entries.
using Column = std::vector<int>;

// target += source over Z2.
void add_into(Column& target, const Column& source);
inline int low(const Column& c) { return c.empty() ? -1 : c.back(); }

struct SparseZ2Matrix {
    int nrows = 0;
    std::vector<Column> cols;

    SparseZ2Matrix() = default;
    SparseZ2Matrix(int rows, int ncols) : nrows(rows), cols(ncols) {}

    int ncols() const { return static_cast<int>(cols.size()); }
    bool get(int r, int c) const;
    void set(int r, int c, bool value);
    bool is_zero() const;

    static SparseZ2Matrix identity(int n);
    static SparseZ2Matrix from_dense(const std::vector<std::vector<int>>& rows);
    std::vector<std::vector<int>> to_dense() const;
    SparseZ2Matrix transpose() const;
    friend SparseZ2Matrix operator*(const SparseZ2Matrix& a, const SparseZ2Matrix& b);
    friend bool operator==(const SparseZ2Matrix&, const SparseZ2Matrix&) = default;
};

struct ReductionResult {
    SparseZ2Matrix R;
    SparseZ2Matrix V; // R = D * V
    std::vector<int> pivot_of_row; // column whose lowest entry is this row, or -1
};

// Left-to-right column reduction in the given column order.
ReductionResult standard_reduce(const SparseZ2Matrix& D);

SparseZ2Matrix boundary_matrix(const FilteredComplex2D& fc);

struct Bar {
    int dim = 0;
    Interval interval;
    int birth_column = -1;
    int death_column = -1; // -1 for essential bars
    Column representative;  // column indices of the complex
};

struct Persistence {
    ReductionResult reduction;
    std::vector<Bar> bars; // nonempty bars of dims 0 and 1, standard order within each dimension

    std::vector<Bar> bars_of(int dim) const;
};

Persistence persistence_with_representatives(const FilteredComplex2D& fc);

// Chain a of simplices with value <= t and boundary z, or nullopt if z is not a boundary at t.
std::optional<Column> solve_chain(const FilteredComplex2D& fc, const ReductionResult& red, Column z, double t);

Column chain_boundary(const FilteredComplex2D& fc, const Column& chain);

} // namespace mvph
