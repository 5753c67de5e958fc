#pragma once

// Making the alpha values of every local complex agree with the global filtration.

#include "mvph/alpha.hpp"
#include "mvph/cover.hpp"

#include <map>
#include <vector>

namespace mvph {

struct ValueCorrection {
    Simplex simplex;
    double value = 0.0;
};

// Value an edge receives from the given cofaces only (as local_alpha_with_list would assign it).
double edge_value_from_cofaces(const Simplex& edge, const std::vector<Simplex>& cofaces, const PointLookup& point);

// Run by the home worker of the zone after K is stable. For every edge announced by this zone
// and every non-home owner of it, compares the value that owner computes from the cofaces it can
// see with the exact value, and emits a correction where they differ. Keyed by target zone.
std::map<int, std::vector<ValueCorrection>> critical_non_gabriel_corrections(const SubcomplexK& k,
                                                                            const std::vector<OwnerRecord>& home_records,
                                                                            const std::function<int(PointId)>& zone_of);

// Replaces values of existing simplices. Throws InconsistencyError if a simplex is missing or two
// corrections disagree.
FilteredComplex2D apply_corrections(const FilteredComplex2D& fc, const std::vector<ValueCorrection>& corrections);

// The subcomplex on `simplices` (closed under faces) with the values of fc.
FilteredComplex2D restrict_complex(const FilteredComplex2D& fc, const std::vector<Simplex>& simplices);

struct IntersectionAlpha {
    FilteredComplex2D complex;
    std::vector<Simplex> critical_non_gabriel; // sorted
};

// Values of an intersection inherited from K_i, with the non-Gabriel edges of K_i whose blocking
// vertex is not in the intersection flagged critical: the other side cannot detect them.
IntersectionAlpha intersection_alpha_and_critical(const std::vector<Simplex>& intersection, const LocalAlpha& local,
                                                  const PointLookup& point);

} // namespace mvph
