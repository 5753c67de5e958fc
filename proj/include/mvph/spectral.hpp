#pragma once

#include "mvph/barcode_algebra.hpp"
#include "mvph/cover.hpp"
#include "mvph/filtered_complex.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace mvph {

// Persistence of one complex A(sigma) of the cover, with representatives and lookups.
struct LocalTerm {
    ZoneSet sigma;
    FilteredComplex2D complex;
    Persistence persistence;
    std::array<std::vector<Interval>, 2> bars; // per dimension, in persistence order
    std::array<std::vector<Column>, 2> reps;   // representative chains, complex indices
    std::array<CycleLookup, 2> lookup;

    static LocalTerm compute(ZoneSet sigma, FilteredComplex2D complex);
};

// Terms held by one worker (or all of them, in a sequential run), keyed by sigma.
using TermMap = std::map<ZoneSet, LocalTerm>;

// Chain of `from` re-indexed in `to`. Throws InconsistencyError if a simplex is missing.
Column embed_chain(const LocalTerm& from, const Column& chain, const LocalTerm& to);

// Matrix of PH_q(A(coface)) -> PH_q(A(face)) in the two local barcode bases.
SparseZ2Matrix inclusion_block(const LocalTerm& coface, const LocalTerm& face, int q);

// Global address of a first-page generator: nerve simplex plus local bar index.
struct GeneratorId {
    ZoneSet sigma;
    int bar = 0;
    friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

std::string to_string(const ZoneSet& sigma);
std::string to_string(const GeneratorId& g);

struct FirstPageTerm {
    std::vector<GeneratorId> ids; // sorted
    std::vector<Interval> intervals;

    int size() const { return static_cast<int>(ids.size()); }
    int index_of(const GeneratorId& g) const; // -1 if absent
};

struct FirstPage {
    std::array<std::array<FirstPageTerm, 2>, 3> terms; // [p][q]
    // d[p][q]: terms[p][q] -> terms[p-1][q] for p = 1, 2; d[0][q] is empty.
    std::array<std::array<SparseZ2Matrix, 2>, 3> d;

    MorphismMatrix morphism(int p, int q) const;
};

// Generators of one nerve simplex that take part in the first page.
struct TermShipment {
    ZoneSet sigma;
    int q = 0;
    std::vector<int> bars; // local bar indices
    std::vector<Interval> intervals;
};

struct BlockShipment {
    ZoneSet face, coface;
    int q = 0;
    SparseZ2Matrix block; // rows: all bars of face, columns: all bars of coface
};

// Assembles the first page from shipped generators and blocks. A nonzero block row whose
// generator was not shipped raises ProtocolError.
FirstPage assemble_first_page(const std::vector<TermShipment>& terms, const std::vector<BlockShipment>& blocks);

// Sequential convenience: every generator of every term, blocks computed from the terms.
FirstPage first_page(const NerveComplex& nerve, const TermMap& terms);

// Ker(d_out) / Im(d_in) presented as a quotient of a kernel basis.
struct KernelQuotient {
    SubmoduleBasis kernel; // coords in first-page indices
    QuotientModule module; // generators are the kernel bars
    std::vector<Coords> reps; // per module basis element, first-page coords

    int size() const { return static_cast<int>(module.intervals.size()); }
};

// Second-page terms of one row q.
struct SecondPageRow {
    QuotientModule cokernel; // E2_{0,q}; generators are first-page indices
    KernelQuotient middle;   // E2_{1,q}
    SubmoduleBasis top_kernel; // Ker d1_{2,q}, coords in first-page indices
};

SubmoduleBasis kernel_basis(const FirstPage& page, int p, int q);
SecondPageRow second_page_row(const FirstPage& page, int q);

struct SecondPage {
    std::array<SecondPageRow, 2> rows;
};

SecondPage second_page(const FirstPage& page);

// Throws CollapseError if E2_{0,1}, E2_{1,1} or Ker d1_{2,1} has an infinite interval.
void collapse_check(const FirstPage& page, const SecondPageRow& row1);

// What every worker needs to lift one generator of E2_{1,0}.
struct LiftRequest {
    Interval interval;
    std::vector<GeneratorId> w1; // E1_{1,0} generators of the representative, alive at birth
    std::vector<GeneratorId> a2; // E1_{2,0} generators whose image cancels it at death
};

std::vector<LiftRequest> lift_requests(const FirstPage& page, const KernelQuotient& e10);

// Coordinates, in the zone's own PH_1 bars, of the zone component of the extended
// representative at the generator's death. `terms` must hold A(sigma) for every nerve simplex
// containing the zone. Throws InconsistencyError when a boundary equation has no solution.
Coords local_lift(int zone, const TermMap& terms, const LiftRequest& request);

struct ExtensionData {
    std::vector<Interval> e01; // basis of E2_{0,1}
    std::vector<Interval> e10; // basis of E2_{1,0}
    std::vector<Coords> columns; // per e10 element: coords in e01 at its death
};

// Quotient (E2_{0,1} + B E2_{1,0}) / ext(D E2_{1,0}). Generators are e01 followed by one
// [birth, inf) per e10 element; the intervals are PH_1.
QuotientModule solve_extension(const ExtensionData& ext);

} // namespace mvph
