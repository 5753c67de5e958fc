#include "mvph/reconcile.hpp"

#include "mvph/errors.hpp"
#include "mvph/interval.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace mvph {

namespace {

PointId opposite(const Simplex& tri, const Simplex& edge) {
    for (PointId v : tri.v)
        if (!edge.has_vertex(v)) return v;
    throw std::logic_error("edge is not a face of the triangle");
}

} // namespace

double edge_value_from_cofaces(const Simplex& edge, const std::vector<Simplex>& cofaces, const PointLookup& point) {
    const Point2 &a = point(edge.v[0]), &b = point(edge.v[1]);
    bool blocked = false;
    double min_tri = kInfinity;
    for (const Simplex& t : cofaces) {
        min_tri = std::min(min_tri, triangle_value(point(t.v[0]), point(t.v[1]), point(t.v[2])));
        blocked = blocked || blocks_edge(a, b, point(opposite(t, edge)));
    }
    return blocked ? min_tri : gabriel_value(a, b);
}

std::map<int, std::vector<ValueCorrection>> critical_non_gabriel_corrections(const SubcomplexK& k,
                                                                            const std::vector<OwnerRecord>& home_records,
                                                                            const std::function<int(PointId)>& zone_of) {
    std::unordered_map<std::uint64_t, std::vector<Simplex>> cofaces;
    for (const Simplex& t : k.triangles)
        for (const Simplex& e : t.facets()) cofaces[e.key()].push_back(t);
    PointLookup point = [&](PointId id) -> const Point2& { return k.local.point(id); };

    std::map<int, std::vector<ValueCorrection>> out;
    for (const OwnerRecord& rec : home_records) {
        const Simplex& e = rec.simplex;
        if (e.dim() != 1 || announcing_zone(e, zone_of) != k.zone) continue;
        const std::vector<Simplex>& all = cofaces.at(e.key());
        const double exact = edge_value_from_cofaces(e, all, point);
        for (int j : rec.owners) {
            if (zone_of(e.v[0]) == j || zone_of(e.v[1]) == j) continue; // homes see every coface
            std::vector<Simplex> visible;
            for (const Simplex& t : all)
                if (zone_of(t.v[0]) == j || zone_of(t.v[1]) == j || zone_of(t.v[2]) == j) visible.push_back(t);
            if (edge_value_from_cofaces(e, visible, point) != exact) out[j].push_back({e, exact});
        }
    }
    return out;
}

FilteredComplex2D apply_corrections(const FilteredComplex2D& fc, const std::vector<ValueCorrection>& corrections) {
    auto entries = fc.entries();
    std::unordered_map<std::uint64_t, double> fixed;
    for (const ValueCorrection& c : corrections) {
        if (!fc.contains(c.simplex)) throw InconsistencyError("correction for absent simplex " + c.simplex.str());
        auto [it, fresh] = fixed.emplace(c.simplex.key(), c.value);
        if (!fresh && it->second != c.value)
            throw InconsistencyError("conflicting corrections for " + c.simplex.str());
    }
    for (auto& [s, v] : entries) {
        auto it = fixed.find(s.key());
        if (it != fixed.end()) v = it->second;
    }
    return FilteredComplex2D(std::move(entries));
}

FilteredComplex2D restrict_complex(const FilteredComplex2D& fc, const std::vector<Simplex>& simplices) {
    std::vector<std::pair<Simplex, double>> entries;
    entries.reserve(simplices.size());
    for (const Simplex& s : simplices) {
        int i = fc.find(s);
        if (i < 0) throw InconsistencyError("simplex " + s.str() + " missing from the ambient complex");
        entries.emplace_back(s, fc.value(i));
    }
    return FilteredComplex2D(std::move(entries));
}

IntersectionAlpha intersection_alpha_and_critical(const std::vector<Simplex>& intersection, const LocalAlpha& local,
                                                  const PointLookup& point) {
    IntersectionAlpha out{restrict_complex(local.complex, intersection), {}};
    std::unordered_map<std::uint64_t, std::vector<Simplex>> cofaces;
    for (const Simplex& t : intersection)
        if (t.dim() == 2)
            for (const Simplex& e : t.facets()) cofaces[e.key()].push_back(t);
    for (const Simplex& e : local.non_gabriel) {
        if (!out.complex.contains(e)) continue;
        bool seen = false;
        for (const Simplex& t : cofaces[e.key()])
            seen = seen || blocks_edge(point(e.v[0]), point(e.v[1]), point(opposite(t, e)));
        if (!seen) out.critical_non_gabriel.push_back(e);
    }
    return out;
}

} // namespace mvph
