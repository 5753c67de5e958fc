#pragma once

// Sequential pass through the spectral pipeline on exact (global) filtration values.

#include "cover_driver.hpp"

#include "mvph/reconcile.hpp"
#include "mvph/spectral.hpp"

namespace mvph::testing {

struct SpectralRun {
    CoverRun cover;
    TermMap terms;
    FirstPage page;
    SecondPage second;
    QuotientModule ph1;
    std::vector<Interval> ph0, ph1_bars;
};

inline TermMap exact_terms(const CoverRun& cover, const FilteredComplex2D& global) {
    TermMap terms;
    for (const ZoneSet& z : cover.nerve.vertices)
        terms.emplace(z, LocalTerm::compute(z, restrict_complex(global, cover.ks[z[0]].simplices)));
    for (const auto& [zs, simplices] : cover.intersections)
        terms.emplace(zs, LocalTerm::compute(zs, restrict_complex(global, simplices)));
    return terms;
}

inline std::vector<Interval> sorted_bars(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), standard_less);
    return v;
}

// Lift every E2_{1,0} generator zone by zone and solve the extension problem.
inline QuotientModule extend(const FirstPage& page, const SecondPage& second, const TermMap& terms,
                             const std::vector<ZoneSet>& zones) {
    const auto& e01 = second.rows[1].cokernel;
    const auto& e10 = second.rows[0].middle;
    ExtensionData ext{e01.intervals, e10.module.intervals, {}};
    for (const LiftRequest& r : lift_requests(page, e10)) {
        Coords x;
        if (r.interval.death != kInfinity)
            for (const ZoneSet& z : zones)
                for (int bar : local_lift(z[0], terms, r)) {
                    int g = page.terms[0][1].index_of({z, bar});
                    REQUIRE(g >= 0);
                    add_into(x, Coords{g});
                }
        ext.columns.push_back(r.interval.death == kInfinity ? Coords{} : e01.coordinates(x, r.interval.death));
    }
    return solve_extension(ext);
}

inline SpectralRun run_spectral(const std::vector<IndexedPoint>& pts, int m1, int m2, int density) {
    SpectralRun s;
    s.cover = run_cover(pts, m1, m2, density);
    auto global = global_alpha(Triangulation::build(pts));
    s.terms = exact_terms(s.cover, global);
    s.page = first_page(s.cover.nerve, s.terms);
    s.second = second_page(s.page);
    collapse_check(s.page, s.second.rows[1]);
    s.ph0 = sorted_bars(s.second.rows[0].cokernel.intervals);
    s.ph1 = extend(s.page, s.second, s.terms, s.cover.nerve.vertices);
    s.ph1_bars = sorted_bars(s.ph1.intervals);
    return s;
}

inline std::vector<Interval> oracle_bars(const std::vector<IndexedPoint>& pts, int dim) {
    auto fc = global_alpha(Triangulation::build(pts));
    std::vector<Interval> out;
    for (const Bar& b : persistence_with_representatives(fc).bars_of(dim)) out.push_back(b.interval);
    return sorted_bars(out);
}

} // namespace mvph::testing
