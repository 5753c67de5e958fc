#include "mvph/z2matrix.hpp"

#include "mvph/errors.hpp"

#include <algorithm>
#include <iterator>

namespace mvph {

void add_into(Column& target, const Column& source) {
    if (source.empty()) return;
    Column out;
    out.reserve(target.size() + source.size());
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(out));
    target.swap(out);
}

bool SparseZ2Matrix::get(int r, int c) const {
    const Column& col = cols[c];
    return std::binary_search(col.begin(), col.end(), r);
}

void SparseZ2Matrix::set(int r, int c, bool value) {
    Column& col = cols[c];
    auto it = std::lower_bound(col.begin(), col.end(), r);
    bool present = it != col.end() && *it == r;
    if (value && !present) col.insert(it, r);
    if (!value && present) col.erase(it);
}

bool SparseZ2Matrix::is_zero() const {
    return std::all_of(cols.begin(), cols.end(), [](const Column& c) { return c.empty(); });
}

SparseZ2Matrix SparseZ2Matrix::identity(int n) {
    SparseZ2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.cols[i] = {i};
    return m;
}

SparseZ2Matrix SparseZ2Matrix::from_dense(const std::vector<std::vector<int>>& rows) {
    int nr = static_cast<int>(rows.size());
    int nc = nr ? static_cast<int>(rows[0].size()) : 0;
    SparseZ2Matrix m(nr, nc);
    for (int c = 0; c < nc; ++c)
        for (int r = 0; r < nr; ++r)
            if (rows[r][c] & 1) m.cols[c].push_back(r);
    return m;
}

std::vector<std::vector<int>> SparseZ2Matrix::to_dense() const {
    std::vector<std::vector<int>> rows(nrows, std::vector<int>(ncols(), 0));
    for (int c = 0; c < ncols(); ++c)
        for (int r : cols[c]) rows[r][c] = 1;
    return rows;
}

SparseZ2Matrix SparseZ2Matrix::transpose() const {
    SparseZ2Matrix t(ncols(), nrows);
    for (int c = 0; c < ncols(); ++c)
        for (int r : cols[c]) t.cols[r].push_back(c);
    return t;
}

SparseZ2Matrix operator*(const SparseZ2Matrix& a, const SparseZ2Matrix& b) {
    if (a.ncols() != b.nrows) throw std::invalid_argument("matrix product: shape mismatch");
    SparseZ2Matrix out(a.nrows, b.ncols());
    for (int c = 0; c < b.ncols(); ++c)
        for (int k : b.cols[c]) add_into(out.cols[c], a.cols[k]);
    return out;
}

ReductionResult standard_reduce(const SparseZ2Matrix& D) {
    ReductionResult res{D, SparseZ2Matrix::identity(D.ncols()), std::vector<int>(D.nrows, -1)};
    for (int j = 0; j < D.ncols(); ++j) {
        Column& col = res.R.cols[j];
        while (!col.empty()) {
            int k = res.pivot_of_row[col.back()];
            if (k < 0) break;
            add_into(col, res.R.cols[k]);
            add_into(res.V.cols[j], res.V.cols[k]);
        }
        if (!col.empty()) res.pivot_of_row[col.back()] = j;
    }
    return res;
}

SparseZ2Matrix boundary_matrix(const FilteredComplex2D& fc) {
    int n = static_cast<int>(fc.size());
    SparseZ2Matrix D(n, n);
    for (int j = 0; j < n; ++j) D.cols[j] = fc.boundary(j);
    return D;
}

std::vector<Bar> Persistence::bars_of(int dim) const {
    std::vector<Bar> out;
    for (const Bar& b : bars)
        if (b.dim == dim) out.push_back(b);
    return out;
}

Persistence persistence_with_representatives(const FilteredComplex2D& fc) {
    Persistence p{standard_reduce(boundary_matrix(fc)), {}};
    const auto& R = p.reduction.R;
    for (int j = 0; j < static_cast<int>(fc.size()); ++j) {
        if (!R.cols[j].empty()) continue; // negative column
        int dim = fc.simplex(j).dim();
        if (dim > 1) continue;
        int k = p.reduction.pivot_of_row[j];
        Bar b;
        b.dim = dim;
        b.birth_column = j;
        b.interval.birth = fc.value(j);
        if (k >= 0) {
            b.death_column = k;
            b.interval.death = fc.value(k);
            if (b.interval.empty()) continue;
            b.representative = R.cols[k];
        } else {
            b.representative = p.reduction.V.cols[j];
        }
        p.bars.push_back(std::move(b));
    }
    std::stable_sort(p.bars.begin(), p.bars.end(), [](const Bar& a, const Bar& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (standard_less(a.interval, b.interval)) return true;
        if (standard_less(b.interval, a.interval)) return false;
        return a.birth_column < b.birth_column;
    });
    return p;
}

std::optional<Column> solve_chain(const FilteredComplex2D& fc, const ReductionResult& red, Column z, double t) {
    Column chain;
    while (!z.empty()) {
        int l = z.back();
        if (fc.value(l) > t) return std::nullopt;
        int k = red.pivot_of_row[l];
        if (k < 0 || fc.value(k) > t) return std::nullopt;
        add_into(z, red.R.cols[k]);
        add_into(chain, red.V.cols[k]);
    }
    return chain;
}

Column chain_boundary(const FilteredComplex2D& fc, const Column& chain) {
    Column out;
    for (int i : chain) add_into(out, fc.boundary(i));
    return out;
}

} // namespace mvph
