#pragma once

// Sequential correction exchange on top of the cover driver.

#include "cover_driver.hpp"

#include "mvph/reconcile.hpp"

namespace mvph::testing {

struct Reconciled {
    CoverRun run;
    std::vector<FilteredComplex2D> before, after;
};

inline Reconciled reconcile_all(const std::vector<IndexedPoint>& pts, int m1, int m2, int density) {
    Reconciled r{run_cover(pts, m1, m2, density), {}, {}};
    const int M = m1 * m2;
    const auto& za = r.run.layout.assignment;
    std::function<int(PointId)> zone_of = [&](PointId id) { return za.zone_of(id); };
    std::vector<std::vector<ValueCorrection>> inbox(M);
    for (int z = 0; z < M; ++z) {
        const SubcomplexK& k = r.run.ks[z];
        PointLookup point = [&](PointId id) -> const Point2& { return k.local.point(id); };
        r.before.push_back(local_alpha_with_list(k.simplices, point).complex);
        for (auto& [target, list] : critical_non_gabriel_corrections(k, home_owner_records(k, zone_of), zone_of))
            inbox[target].insert(inbox[target].end(), list.begin(), list.end());
    }
    for (int z = 0; z < M; ++z) r.after.push_back(apply_corrections(r.before[z], inbox[z]));
    return r;
}

inline int mismatches(const FilteredComplex2D& local, const FilteredComplex2D& global) {
    int bad = 0;
    for (std::size_t i = 0; i < local.size(); ++i) bad += local.value(int(i)) != global.value_of(local.simplex(int(i)));
    return bad;
}

} // namespace mvph::testing
