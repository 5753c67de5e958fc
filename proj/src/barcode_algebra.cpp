#include "mvph/barcode_algebra.hpp"

#include "mvph/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace mvph {

namespace {

// Drop entries whose row interval has ended by time t.
void drop_dead_rows(Column& col, const std::vector<double>& row_deaths, double t) {
    col.erase(std::remove_if(col.begin(), col.end(), [&](int r) { return row_deaths[r] <= t; }), col.end());
}

// Incremental Z2 solver over sparse columns with pivot-by-low elimination.
class PointwiseSolver {
public:
    // Returns false if the column is dependent on earlier ones.
    bool add(Column col) {
        Column combo{static_cast<int>(reduced_.size())};
        while (!col.empty()) {
            auto it = pivot_.find(col.back());
            if (it == pivot_.end()) break;
            add_into(col, reduced_[it->second]);
            add_into(combo, combos_[it->second]);
        }
        bool independent = !col.empty();
        if (independent) pivot_[col.back()] = static_cast<int>(reduced_.size());
        reduced_.push_back(std::move(col));
        combos_.push_back(std::move(combo));
        return independent;
    }
    // Indices of added columns summing to target, or nullopt.
    std::optional<Column> solve(Column target) const {
        Column combo;
        while (!target.empty()) {
            auto it = pivot_.find(target.back());
            if (it == pivot_.end()) return std::nullopt;
            add_into(target, reduced_[it->second]);
            add_into(combo, combos_[it->second]);
        }
        return combo;
    }

private:
    std::vector<Column> reduced_;
    std::vector<Column> combos_;
    std::unordered_map<int, int> pivot_;
};

} // namespace

std::vector<int> sort_basis(const std::vector<Interval>& intervals, BasisOrder order) {
    std::vector<int> perm(intervals.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        return order == BasisOrder::Standard ? standard_less(intervals[a], intervals[b])
                                             : endpoint_less(intervals[a], intervals[b]);
    });
    return perm;
}

bool is_sorted_basis(const std::vector<Interval>& intervals, BasisOrder order) {
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        bool inverted = order == BasisOrder::Standard ? standard_less(intervals[i], intervals[i - 1])
                                                      : endpoint_less(intervals[i], intervals[i - 1]);
        if (inverted) return false;
    }
    return true;
}

bool MorphismMatrix::satisfies_support() const {
    for (int c = 0; c < F.ncols(); ++c)
        for (int r : F.cols[c]) {
            const Interval &row = codomain[r], &col = domain[c];
            if (!(row.birth <= col.birth && col.birth <= row.death && row.death <= col.death)) return false;
        }
    return true;
}

MorphismMatrix MorphismMatrix::reordered(std::vector<int>* col_perm, std::vector<int>* row_perm) const {
    auto cperm = sort_basis(domain, BasisOrder::Standard);
    auto rperm = sort_basis(codomain, BasisOrder::Endpoint);
    std::vector<int> row_pos(rperm.size());
    for (std::size_t k = 0; k < rperm.size(); ++k) row_pos[rperm[k]] = static_cast<int>(k);
    MorphismMatrix out;
    out.F = SparseZ2Matrix(F.nrows, F.ncols());
    for (std::size_t k = 0; k < cperm.size(); ++k) {
        out.domain.push_back(domain[cperm[k]]);
        for (int r : F.cols[cperm[k]]) out.F.cols[k].push_back(row_pos[r]);
        std::sort(out.F.cols[k].begin(), out.F.cols[k].end());
    }
    for (int r : rperm) out.codomain.push_back(codomain[r]);
    if (col_perm) *col_perm = cperm;
    if (row_perm) *row_perm = rperm;
    return out;
}

CycleLookup CycleLookup::from_persistence(const FilteredComplex2D& fc, const Persistence& p, int dim) {
    CycleLookup lk;
    lk.by_low.resize(fc.size());
    std::vector<int> bar_of_birth(fc.size(), -1);
    int idx = 0;
    for (const Bar& b : p.bars)
        if (b.dim == dim) bar_of_birth[b.birth_column] = idx++;
    const auto& red = p.reduction;
    for (int l = 0; l < static_cast<int>(fc.size()); ++l) {
        if (fc.simplex(l).dim() != dim) continue;
        Entry& e = lk.by_low[l];
        int k = red.pivot_of_row[l];
        if (k >= 0) {
            e = {red.R.cols[k], fc.value(k), bar_of_birth[l], true};
        } else if (red.R.cols[l].empty()) {
            e = {red.V.cols[l], kInfinity, bar_of_birth[l], true};
        }
    }
    return lk;
}

Coords express_cycle(const CycleLookup& codomain, Column z, double a) {
    Coords out;
    while (!z.empty()) {
        int l = z.back();
        if (l >= static_cast<int>(codomain.by_low.size()) || !codomain.by_low[l].valid)
            throw InconsistencyError("embedded chain is not a cycle of the codomain");
        const auto& e = codomain.by_low[l];
        add_into(z, e.chain);
        if (e.bar >= 0 && e.death > a) add_into(out, Column{e.bar});
    }
    return out;
}

MorphismMatrix associated_matrix(const std::vector<std::pair<Interval, Column>>& domain_cycles,
                                 const CycleLookup& codomain, const std::vector<Interval>& codomain_bars) {
    MorphismMatrix m;
    m.F = SparseZ2Matrix(static_cast<int>(codomain_bars.size()), static_cast<int>(domain_cycles.size()));
    m.codomain = codomain_bars;
    for (std::size_t j = 0; j < domain_cycles.size(); ++j) {
        const auto& [iv, z] = domain_cycles[j];
        m.domain.push_back(iv);
        m.F.cols[j] = express_cycle(codomain, z, iv.birth);
    }
    return m;
}

ImageKernel image_kernel(const MorphismMatrix& m) {
    if (!is_sorted_basis(m.domain, BasisOrder::Standard))
        throw std::invalid_argument("image_kernel: columns must be in standard order");
    if (!is_sorted_basis(m.codomain, BasisOrder::Endpoint))
        throw std::invalid_argument("image_kernel: rows must be in endpoint order");
    const int ncols = m.F.ncols();
    std::vector<double> row_deaths;
    for (const Interval& iv : m.codomain) row_deaths.push_back(iv.death);

    std::vector<Column> R = m.F.cols;
    std::vector<Column> T(ncols);
    std::vector<int> pivot(m.F.nrows, -1);
    for (int j = 0; j < ncols; ++j) {
        T[j] = {j};
        const double a = m.domain[j].birth;
        drop_dead_rows(R[j], row_deaths, a);
        while (!R[j].empty() && pivot[R[j].back()] >= 0) {
            int k = pivot[R[j].back()];
            add_into(R[j], R[k]);
            add_into(T[j], T[k]);
            drop_dead_rows(R[j], row_deaths, a);
        }
        if (!R[j].empty()) pivot[R[j].back()] = j;
    }

    ImageKernel out;
    struct Candidate {
        double birth;
        int column;
    };
    std::vector<Candidate> candidates;
    for (int j = 0; j < ncols; ++j) {
        if (R[j].empty()) {
            candidates.push_back({m.domain[j].birth, j});
            continue;
        }
        Interval iv{m.domain[j].birth, row_deaths[R[j].back()]};
        candidates.push_back({iv.death, j});
        if (iv.empty()) continue;
        out.image.intervals.push_back(iv);
        out.image.coords.push_back(R[j]);
    }

    // Submodule of the domain generated by the candidates: image-style reduction
    // with domain generators as rows in endpoint order.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& x, const Candidate& y) { return x.birth < y.birth; });
    auto dperm = sort_basis(m.domain, BasisOrder::Endpoint);
    std::vector<int> dpos(dperm.size());
    for (std::size_t k = 0; k < dperm.size(); ++k) dpos[dperm[k]] = static_cast<int>(k);
    std::vector<double> dom_deaths;
    for (int k : dperm) dom_deaths.push_back(m.domain[k].death);
    std::vector<Column> K;
    std::vector<int> kpivot(ncols, -1);
    for (const Candidate& c : candidates) {
        if (c.birth == kInfinity) continue;
        Column col;
        for (int g : T[c.column]) col.push_back(dpos[g]);
        std::sort(col.begin(), col.end());
        drop_dead_rows(col, dom_deaths, c.birth);
        while (!col.empty() && kpivot[col.back()] >= 0) {
            add_into(col, K[kpivot[col.back()]]);
            drop_dead_rows(col, dom_deaths, c.birth);
        }
        if (col.empty()) continue;
        kpivot[col.back()] = static_cast<int>(K.size());
        K.push_back(col);
        Interval iv{c.birth, dom_deaths[col.back()]};
        if (iv.empty()) continue;
        Coords coords;
        for (int r : col) coords.push_back(dperm[r]);
        std::sort(coords.begin(), coords.end());
        out.kernel.intervals.push_back(iv);
        out.kernel.coords.push_back(std::move(coords));
    }
    return out;
}

BoxGaussResult box_gauss_reduce(const SparseZ2Matrix& M, const std::vector<double>& lbirths,
                                const std::vector<double>& ldeaths, int num_leading) {
    const int ncols = M.ncols();
    if (static_cast<int>(lbirths.size()) != ncols || static_cast<int>(ldeaths.size()) != M.nrows)
        throw std::invalid_argument("box_gauss_reduce: metadata size mismatch");
    BoxGaussResult res{M, SparseZ2Matrix::identity(ncols), lbirths, {}};
    auto& cols = res.reduced.cols;
    std::vector<std::vector<int>> by_low(M.nrows);
    for (int j = 0; j < ncols; ++j) {
        drop_dead_rows(cols[j], ldeaths, res.lbirths[j]);
        if (!cols[j].empty()) by_low[cols[j].back()].push_back(j);
    }
    for (int i = M.nrows - 1; i >= 0; --i) {
        auto& here = by_low[i];
        if (here.size() < 2) continue;
        // Relations first, earliest birth first; generators keep their standard order.
        std::sort(here.begin(), here.end(), [&](int a, int b) {
            bool ra = a < num_leading, rb = b < num_leading;
            if (ra != rb) return ra;
            if (ra && res.lbirths[a] != res.lbirths[b]) return res.lbirths[a] < res.lbirths[b];
            return a < b;
        });
        const int p = here.front();
        for (std::size_t k = 1; k < here.size(); ++k) {
            const int j = here[k];
            add_into(cols[j], cols[p]);
            add_into(res.V.cols[j], res.V.cols[p]);
            res.lbirths[j] = std::max(res.lbirths[j], res.lbirths[p]);
            drop_dead_rows(cols[j], ldeaths, res.lbirths[j]);
            if (!cols[j].empty()) by_low[cols[j].back()].push_back(j);
        }
        here.assign(1, p);
    }
    for (int j = num_leading; j < ncols; ++j) {
        double orig = lbirths[j];
        res.intervals.push_back(cols[j].empty() ? Interval{orig, res.lbirths[j]}
                                                : Interval{orig, ldeaths[cols[j].back()]});
    }
    return res;
}

QuotientModule quotient(const std::vector<Interval>& generators, const std::vector<Relation>& relations) {
    // Presentation reduction: rows are generators ordered by birth, columns are the relations and
    // the generator deaths ordered by the time they take effect. The lowest row of a reduced
    // column is the youngest generator it involves, which dies at that column's time.
    QuotientModule q;
    q.generators = generators;
    q.relations = relations;
    const int G = static_cast<int>(generators.size());
    const auto gperm = sort_basis(generators, BasisOrder::Standard);
    std::vector<int> row_of(G);
    for (int k = 0; k < G; ++k) row_of[gperm[k]] = k;

    struct Col {
        double grade;
        Column rows;
    };
    std::vector<Col> cols;
    for (const Relation& rel : relations) {
        Column c;
        for (int g : rel.coords) c.push_back(row_of[g]);
        std::sort(c.begin(), c.end());
        cols.push_back({rel.birth, std::move(c)});
    }
    for (int g = 0; g < G; ++g)
        if (generators[g].finite()) cols.push_back({generators[g].death, {row_of[g]}});
    std::stable_sort(cols.begin(), cols.end(), [](const Col& a, const Col& b) { return a.grade < b.grade; });

    std::vector<int> killer(G, -1);
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
        Column& c = cols[j].rows;
        while (!c.empty() && killer[c.back()] >= 0) add_into(c, cols[killer[c.back()]].rows);
        if (!c.empty()) killer[c.back()] = j;
    }

    std::vector<Interval> ivs;
    std::vector<Coords> reps;
    std::vector<int> src;
    for (int row = 0; row < G; ++row) {
        const int g = gperm[row];
        Interval iv{generators[g].birth, killer[row] >= 0 ? cols[killer[row]].grade : kInfinity};
        if (iv.empty()) continue;
        Coords c;
        if (killer[row] < 0) {
            c = {g};
        } else {
            for (int r : cols[killer[row]].rows)
                if (generators[gperm[r]].death > iv.birth) c.push_back(gperm[r]);
            std::sort(c.begin(), c.end());
        }
        ivs.push_back(iv);
        reps.push_back(std::move(c));
        src.push_back(g);
    }
    for (int k : sort_basis(ivs, BasisOrder::Standard)) {
        q.intervals.push_back(ivs[k]);
        q.coords.push_back(reps[k]);
        q.source.push_back(src[k]);
    }
    return q;
}

Coords alive_part(const Coords& x, const std::vector<Interval>& intervals, double t) {
    Coords out;
    for (int g : x)
        if (intervals[g].death > t) out.push_back(g);
    return out;
}

Coords QuotientModule::coordinates(const Coords& x, double t) const {
    PointwiseSolver solver;
    std::vector<int> basis_of_column;
    for (const Relation& r : relations) {
        if (r.birth > t) continue;
        solver.add(alive_part(r.coords, generators, t));
        basis_of_column.push_back(-1);
    }
    for (std::size_t j = 0; j < intervals.size(); ++j) {
        if (!intervals[j].contains(t)) continue;
        if (!solver.add(alive_part(coords[j], generators, t)))
            throw InconsistencyError("quotient basis is dependent at t = " + std::to_string(t));
        basis_of_column.push_back(static_cast<int>(j));
    }
    auto combo = solver.solve(alive_part(x, generators, t));
    if (!combo) throw InconsistencyError("element is not in the quotient span at t = " + std::to_string(t));
    Coords out;
    for (int c : *combo)
        if (basis_of_column[c] >= 0) out.push_back(basis_of_column[c]);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Coords> submodule_coordinates(const SubmoduleBasis& basis, const std::vector<Interval>& ambient,
                                            const Coords& x, double t) {
    PointwiseSolver solver;
    std::vector<int> basis_of_column;
    for (std::size_t j = 0; j < basis.intervals.size(); ++j) {
        if (!basis.intervals[j].contains(t)) continue;
        solver.add(alive_part(basis.coords[j], ambient, t));
        basis_of_column.push_back(static_cast<int>(j));
    }
    auto combo = solver.solve(alive_part(x, ambient, t));
    if (!combo) return std::nullopt;
    Coords out;
    for (int c : *combo) out.push_back(basis_of_column[c]);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Coords> solve_combination(const std::vector<Coords>& columns, const Coords& target) {
    PointwiseSolver solver;
    for (const Coords& c : columns) solver.add(c);
    auto combo = solver.solve(target);
    if (combo) std::sort(combo->begin(), combo->end());
    return combo;
}

PersistenceVector barcode_sum(const PersistenceVector& a, const PersistenceVector& b) {
    PersistenceVector out;
    out.support = {std::max(a.support.birth, b.support.birth), std::min(a.support.death, b.support.death)};
    out.coords = a.coords;
    add_into(out.coords, b.coords);
    return out;
}

PersistenceVector cutoff(double s, const PersistenceVector& v) {
    return {{std::max(s, v.support.birth), v.support.death}, v.coords};
}

} // namespace mvph
