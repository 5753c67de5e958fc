#include "mvph/alpha.hpp"

#include "mvph/interval.hpp"

#include <algorithm>
#include <unordered_map>

namespace mvph {

double gabriel_value(const Point2& a, const Point2& b) { return 0.25 * squared_distance(a, b); }

double triangle_value(const Point2& a, const Point2& b, const Point2& c) {
    double r2 = circumdata_triangle(a, b, c).squared_radius;
    return std::max({r2, gabriel_value(a, b), gabriel_value(a, c), gabriel_value(b, c)});
}

bool blocks_edge(const Point2& a, const Point2& b, const Point2& opposite) {
    return diametral_side(a, b, opposite) > 0;
}

std::vector<Simplex> close_under_faces(const std::vector<Simplex>& simplices) {
    std::vector<Simplex> out;
    out.reserve(simplices.size() * 3);
    for (const Simplex& s : simplices) {
        out.push_back(s);
        for (const Simplex& f : s.facets()) {
            out.push_back(f);
            for (const Simplex& g : f.facets()) out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LocalAlpha local_alpha_with_list(const std::vector<Simplex>& simplices, const PointLookup& point) {
    std::unordered_map<std::uint64_t, double> tri_value;
    // edge -> (min adjacent triangle value, blocked by an opposite vertex)
    struct EdgeInfo {
        double min_tri = kInfinity;
        bool blocked = false;
    };
    std::unordered_map<std::uint64_t, EdgeInfo> edge_info;
    for (const Simplex& s : simplices) {
        if (s.dim() != 2) continue;
        const Point2 &a = point(s.v[0]), &b = point(s.v[1]), &c = point(s.v[2]);
        double tv = triangle_value(a, b, c);
        tri_value[s.key()] = tv;
        const PointId ids[3] = {s.v[0], s.v[1], s.v[2]};
        const Point2* ps[3] = {&a, &b, &c};
        for (int k = 0; k < 3; ++k) {
            int i = (k + 1) % 3, j = (k + 2) % 3;
            EdgeInfo& e = edge_info[Simplex::edge(ids[i], ids[j]).key()];
            e.min_tri = std::min(e.min_tri, tv);
            e.blocked = e.blocked || blocks_edge(*ps[i], *ps[j], *ps[k]);
        }
    }
    LocalAlpha out;
    std::vector<std::pair<Simplex, double>> entries;
    entries.reserve(simplices.size());
    for (const Simplex& s : simplices) {
        switch (s.dim()) {
        case 0: entries.emplace_back(s, 0.0); break;
        case 1: {
            auto it = edge_info.find(s.key());
            if (it != edge_info.end() && it->second.blocked) {
                entries.emplace_back(s, it->second.min_tri);
                out.non_gabriel.push_back(s);
            } else {
                entries.emplace_back(s, gabriel_value(point(s.v[0]), point(s.v[1])));
            }
            break;
        }
        default: entries.emplace_back(s, tri_value.at(s.key())); break;
        }
    }
    std::sort(out.non_gabriel.begin(), out.non_gabriel.end());
    out.complex = FilteredComplex2D(std::move(entries));
    return out;
}

FilteredComplex2D global_alpha(const Triangulation& tri) {
    std::vector<Simplex> all = tri.triangles();
    auto edges = tri.edges();
    all.insert(all.end(), edges.begin(), edges.end());
    for (const IndexedPoint& v : tri.vertices()) all.push_back(Simplex::vertex(v.id));
    all = close_under_faces(all);
    return local_alpha_with_list(all, [&](PointId id) -> const Point2& { return tri.point(id); }).complex;
}

} // namespace mvph
