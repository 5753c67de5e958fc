#pragma once

#include "mvph/interval.hpp"
#include "mvph/z2matrix.hpp"

#include <optional>
#include <vector>

namespace mvph {

enum class BasisOrder { Standard, Endpoint };

// Coordinates of an element in some barcode basis: sorted generator indices.
using Coords = Column;

// Stable sort of the intervals; perm[k] is the original index placed at position k.
std::vector<int> sort_basis(const std::vector<Interval>& intervals, BasisOrder order);
bool is_sorted_basis(const std::vector<Interval>& intervals, BasisOrder order);

// Matrix of a persistence morphism in barcode bases, rows = codomain, cols = domain.
struct MorphismMatrix {
    SparseZ2Matrix F;
    std::vector<Interval> domain;
    std::vector<Interval> codomain;

    // a_row <= a_col <= b_row <= b_col for every nonzero entry.
    bool satisfies_support() const;
    // The same morphism with columns in standard order and rows in endpoint order.
    MorphismMatrix reordered(std::vector<int>* col_perm = nullptr, std::vector<int>* row_perm = nullptr) const;
};

// How each cycle with a given lowest row is written in the codomain: a representative chain
// with that low, the value at which it becomes a boundary, and the codomain bar it stands for
// (-1 when it is a boundary from its birth on).
struct CycleLookup {
    struct Entry {
        Column chain;
        double death = kInfinity;
        int bar = -1;
        bool valid = false;
    };
    std::vector<Entry> by_low;

    static CycleLookup from_persistence(const FilteredComplex2D& fc, const Persistence& p, int dim);
};

// Coordinates of cycle z at value a in the codomain barcode basis. Throws InconsistencyError
// if z is not a cycle of the codomain.
Coords express_cycle(const CycleLookup& codomain, Column z, double a);

// Columns are the embedded domain cycles (codomain chain indices) with their domain intervals.
MorphismMatrix associated_matrix(const std::vector<std::pair<Interval, Column>>& domain_cycles,
                                 const CycleLookup& codomain, const std::vector<Interval>& codomain_bars);

// A barcode basis of a submodule: intervals plus coordinates in the ambient basis.
struct SubmoduleBasis {
    std::vector<Interval> intervals;
    std::vector<Coords> coords;
};

struct ImageKernel {
    SubmoduleBasis image;  // coords in codomain indices
    SubmoduleBasis kernel; // coords in domain indices
};

// Requires columns in standard order and rows in endpoint order (throws std::invalid_argument).
ImageKernel image_kernel(const MorphismMatrix& m);

struct BoxGaussResult {
    SparseZ2Matrix reduced;
    SparseZ2Matrix V; // reduced = input * V
    std::vector<double> lbirths;
    // One per trailing column; may be empty.
    std::vector<Interval> intervals;
};

// Quotient reduction: the first num_leading columns are relations, the rest are generators
// in standard order; rows in endpoint order with deaths ldeaths.
BoxGaussResult box_gauss_reduce(const SparseZ2Matrix& M, const std::vector<double>& lbirths,
                                const std::vector<double>& ldeaths, int num_leading);

struct Relation {
    double birth = 0.0;
    Coords coords; // in generator indices, evaluated at birth
};

// A persistence module presented as W / U with W a barcode module (generators) and U generated
// by relations, together with a barcode basis of the quotient.
struct QuotientModule {
    std::vector<Interval> generators;
    std::vector<Relation> relations;
    std::vector<Interval> intervals; // per quotient basis element, nonempty
    std::vector<Coords> coords;      // representatives in generator indices
    std::vector<int> source;         // generator index whose column produced the basis element

    // Coordinates of x (generator indices, an element of W at t) in the quotient basis at t.
    // Throws InconsistencyError if no solution exists.
    Coords coordinates(const Coords& x, double t) const;
};

QuotientModule quotient(const std::vector<Interval>& generators, const std::vector<Relation>& relations);

// Coordinates of x in a submodule basis at t (only basis elements alive at t are used).
// Returns nullopt if x is not in the span.
std::optional<Coords> submodule_coordinates(const SubmoduleBasis& basis, const std::vector<Interval>& ambient,
                                            const Coords& x, double t);

// Indices of columns summing to target, or nullopt.
std::optional<Coords> solve_combination(const std::vector<Coords>& columns, const Coords& target);

// Restriction of coordinates to generators alive at t.
Coords alive_part(const Coords& x, const std::vector<Interval>& intervals, double t);

struct PersistenceVector {
    Interval support;
    Coords coords;
};

PersistenceVector barcode_sum(const PersistenceVector& a, const PersistenceVector& b);
PersistenceVector cutoff(double s, const PersistenceVector& v);

} // namespace mvph
