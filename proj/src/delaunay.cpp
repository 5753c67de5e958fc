#include "mvph/delaunay.hpp"

#include "mvph/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_set>

namespace mvph {

namespace {

struct CoordHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
        return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
    }
};

std::pair<std::uint64_t, std::uint64_t> coord_key(const Point2& p) {
    // + 0.0 folds -0.0 into +0.0
    return {std::bit_cast<std::uint64_t>(p.x + 0.0), std::bit_cast<std::uint64_t>(p.y + 0.0)};
}

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int order) {
    std::uint64_t d = 0;
    for (std::uint32_t s = 1u << (order - 1); s > 0; s >>= 1) {
        std::uint32_t rx = (x & s) ? 1 : 0;
        std::uint32_t ry = (y & s) ? 1 : 0;
        d += std::uint64_t{s} * s * ((3 * rx) ^ ry);
        if (ry == 0) {
            if (rx == 1) {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            std::swap(x, y);
        }
    }
    return d;
}

} // namespace

const Point2& Triangulation::point(PointId id) const {
    auto it = local_.find(id);
    if (it == local_.end()) throw ProtocolError("unknown point id " + std::to_string(id));
    return pts_[it->second];
}

std::vector<IndexedPoint> Triangulation::vertices() const {
    std::vector<IndexedPoint> out;
    out.reserve(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) out.push_back({ids_[i], pts_[i]});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

Triangulation Triangulation::build(const std::vector<IndexedPoint>& points) {
    Triangulation t;
    t.insert(points);
    return t;
}

void Triangulation::add_points(const std::vector<IndexedPoint>& points) {
    std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, CoordHash> seen;
    seen.reserve(pts_.size() + points.size());
    for (const Point2& p : pts_) seen.insert(coord_key(p));
    for (const IndexedPoint& ip : points) {
        if (!std::isfinite(ip.p.x) || !std::isfinite(ip.p.y))
            throw DegenerateGeometry("non-finite coordinate for point " + std::to_string(ip.id));
        if (ip.id > kMaxPointId) throw std::out_of_range("point id exceeds supported range");
        if (local_.count(ip.id)) throw DuplicatePoint("duplicate point id " + std::to_string(ip.id));
        if (!seen.insert(coord_key(ip.p)).second)
            throw DuplicatePoint("duplicate coordinates for point " + std::to_string(ip.id));
        local_.emplace(ip.id, static_cast<int>(pts_.size()));
        pts_.push_back(ip.p);
        ids_.push_back(ip.id);
    }
}

void Triangulation::insert(const std::vector<IndexedPoint>& points) {
    if (points.empty()) return;
    std::size_t first_new = pts_.size();
    add_points(points);
    if (degenerate_) {
        rebuild_from_scratch();
        return;
    }
    std::vector<int> fresh;
    for (std::size_t i = first_new; i < pts_.size(); ++i) fresh.push_back(static_cast<int>(i));
    for (int p : hilbert_order(fresh)) insert_local(p);
}

std::vector<int> Triangulation::hilbert_order(const std::vector<int>& locals) const {
    if (locals.size() < 3) return locals;
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
    for (int i : locals) {
        x0 = std::min(x0, pts_[i].x);
        x1 = std::max(x1, pts_[i].x);
        y0 = std::min(y0, pts_[i].y);
        y1 = std::max(y1, pts_[i].y);
    }
    constexpr int order = 16;
    const double cells = double((1u << order) - 1);
    double sx = x1 > x0 ? cells / (x1 - x0) : 0.0;
    double sy = y1 > y0 ? cells / (y1 - y0) : 0.0;
    std::vector<std::pair<std::uint64_t, int>> keyed;
    keyed.reserve(locals.size());
    for (int i : locals) {
        auto gx = static_cast<std::uint32_t>((pts_[i].x - x0) * sx);
        auto gy = static_cast<std::uint32_t>((pts_[i].y - y0) * sy);
        keyed.emplace_back(hilbert_index(gx, gy, order), i);
    }
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : ids_[a.second] < ids_[b.second];
    });
    std::vector<int> out;
    out.reserve(keyed.size());
    for (auto& k : keyed) out.push_back(k.second);
    return out;
}

void Triangulation::rebuild_from_scratch() {
    tris_.clear();
    free_.clear();
    last_ = -1;
    degenerate_ = !initialise();
    if (degenerate_) return;
    std::vector<int> rest;
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i) {
        bool used = false;
        for (int v : tris_[0].v) used = used || v == i;
        if (!used) rest.push_back(i);
    }
    for (int p : hilbert_order(rest)) insert_local(p);
}

bool Triangulation::initialise() {
    int n = static_cast<int>(pts_.size());
    if (n < 3) return false;
    // Prefer the two smallest ids so the seed is independent of input order.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ids_[a] < ids_[b]; });
    int a = order[0], b = order[1];
    for (int k = 2; k < n; ++k) {
        int c = order[k];
        int o = orientation(pts_[a], pts_[b], pts_[c]);
        if (o == 0) continue;
        if (o < 0) std::swap(a, b);
        new_tri({a, b, c});
        new_tri({b, a, kInf});
        new_tri({c, b, kInf});
        new_tri({a, c, kInf});
        link_all();
        last_ = 0;
        return true;
    }
    return false;
}

int Triangulation::new_tri(std::array<int, 3> v) {
    int idx;
    if (!free_.empty()) {
        idx = free_.back();
        free_.pop_back();
        tris_[idx] = Tri{};
    } else {
        idx = static_cast<int>(tris_.size());
        tris_.emplace_back();
    }
    tris_[idx].v = v;
    return idx;
}

void Triangulation::link_all() {
    std::map<std::pair<int, int>, std::pair<int, int>> directed;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
        if (tris_[t].dead) continue;
        for (int k = 0; k < 3; ++k)
            directed[{tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3]}] = {t, k};
    }
    for (auto& [edge, tk] : directed) {
        auto it = directed.find({edge.second, edge.first});
        if (it != directed.end()) tris_[tk.first].n[tk.second] = it->second.first;
    }
}

bool Triangulation::conflicts(const Tri& t, int p) const {
    if (t.ghost()) {
        const Point2& a = pts_[t.v[0]];
        const Point2& b = pts_[t.v[1]];
        int o = orientation(a, b, pts_[p]);
        if (o != 0) return o > 0;
        return diametral_side(a, b, pts_[p]) > 0; // collinear and strictly between a and b
    }
    return in_circle_perturbed(pts_[t.v[0]], ids_[t.v[0]], pts_[t.v[1]], ids_[t.v[1]], pts_[t.v[2]],
                               ids_[t.v[2]], pts_[p], ids_[p]) > 0;
}

int Triangulation::locate(int p) {
    int t = last_;
    if (t < 0 || tris_[t].dead || tris_[t].ghost()) {
        t = -1;
        for (int i = 0; i < static_cast<int>(tris_.size()); ++i)
            if (!tris_[i].dead && !tris_[i].ghost()) {
                t = i;
                break;
            }
    }
    const Point2& q = pts_[p];
    std::size_t cap = 4 * tris_.size() + 64;
    for (std::size_t step = 0; step < cap; ++step) {
        const Tri& tr = tris_[t];
        if (tr.ghost()) return t;
        walk_state_ = walk_state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        int r = static_cast<int>((walk_state_ >> 33) % 3);
        int next = -1;
        for (int j = 0; j < 3 && next < 0; ++j) {
            int k = (r + j) % 3;
            if (orientation(pts_[tr.v[(k + 1) % 3]], pts_[tr.v[(k + 2) % 3]], q) < 0) next = tr.n[k];
        }
        if (next < 0) return t;
        t = next;
    }
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i)
        if (!tris_[i].dead && conflicts(tris_[i], p)) return i;
    throw DegenerateGeometry("point location failed");
}

void Triangulation::insert_local(int p) {
    int seed = locate(p);
    if (!conflicts(tris_[seed], p)) {
        seed = -1;
        for (int i = 0; i < static_cast<int>(tris_.size()) && seed < 0; ++i)
            if (!tris_[i].dead && conflicts(tris_[i], p)) seed = i;
        if (seed < 0) throw DegenerateGeometry("no conflicting triangle for inserted point");
    }

    std::vector<int> cavity{seed};
    std::vector<char> in_cavity(tris_.size(), 0);
    std::vector<char> tested(tris_.size(), 0);
    in_cavity[seed] = tested[seed] = 1;
    for (std::size_t head = 0; head < cavity.size(); ++head) {
        const Tri tr = tris_[cavity[head]];
        for (int nb : tr.n) {
            if (nb < 0 || tested[nb]) continue;
            tested[nb] = 1;
            if (conflicts(tris_[nb], p)) {
                in_cavity[nb] = 1;
                cavity.push_back(nb);
            }
        }
    }

    // One new triangle (u, w, p) per cavity boundary edge u -> w.
    struct Fan {
        int outside;
        int u, w;
    };
    std::vector<Fan> fan;
    for (int c : cavity) {
        const Tri tr = tris_[c];
        for (int k = 0; k < 3; ++k) {
            int outside = tr.n[k];
            if (outside >= 0 && in_cavity[outside]) continue;
            int u = tr.v[(k + 1) % 3], w = tr.v[(k + 2) % 3];
            fan.push_back({outside, u, w});
        }
    }
    for (int c : cavity) {
        tris_[c].dead = true;
        free_.push_back(c);
    }
    std::vector<std::pair<int, int>> by_start, by_end; // vertex -> fan slot
    std::vector<int> created(fan.size());
    for (std::size_t f = 0; f < fan.size(); ++f) {
        int outside = fan[f].outside;
        int t = new_tri({fan[f].u, fan[f].w, p});
        created[f] = t;
        tris_[t].n[2] = outside;
        if (outside >= 0) {
            Tri& o = tris_[outside];
            for (int j = 0; j < 3; ++j) {
                int a = o.v[(j + 1) % 3], b = o.v[(j + 2) % 3];
                if (a == fan[f].w && b == fan[f].u) o.n[j] = t;
            }
        }
        by_start.emplace_back(fan[f].u, static_cast<int>(f));
        by_end.emplace_back(fan[f].w, static_cast<int>(f));
    }
    std::sort(by_start.begin(), by_start.end());
    std::sort(by_end.begin(), by_end.end());
    auto lookup = [](const std::vector<std::pair<int, int>>& m, int key) {
        auto it = std::lower_bound(m.begin(), m.end(), std::make_pair(key, std::numeric_limits<int>::min()));
        if (it == m.end() || it->first != key) throw DegenerateGeometry("cavity boundary is not a cycle");
        return it->second;
    };
    for (std::size_t f = 0; f < fan.size(); ++f) {
        Tri& t = tris_[created[f]];
        t.n[0] = created[lookup(by_start, fan[f].w)]; // across w -> p
        t.n[1] = created[lookup(by_end, fan[f].u)];   // across p -> u
    }
    for (int t : created) {
        Tri& tr = tris_[t];
        // keep the infinite vertex in slot 2
        while (tr.v[0] == kInf || tr.v[1] == kInf) {
            std::rotate(tr.v.begin(), tr.v.begin() + 1, tr.v.end());
            std::rotate(tr.n.begin(), tr.n.begin() + 1, tr.n.end());
        }
        if (!tr.ghost()) last_ = t;
    }
}

std::vector<Simplex> Triangulation::triangles() const {
    std::vector<Simplex> out;
    if (degenerate_) return out;
    for (const Tri& t : tris_)
        if (!t.dead && !t.ghost()) out.push_back(Simplex::triangle(ids_[t.v[0]], ids_[t.v[1]], ids_[t.v[2]]));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> Triangulation::edges() const {
    std::vector<Simplex> out;
    if (degenerate_) {
        std::vector<int> order(pts_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return pts_[a].x != pts_[b].x ? pts_[a].x < pts_[b].x : pts_[a].y < pts_[b].y;
        });
        for (std::size_t i = 1; i < order.size(); ++i)
            out.push_back(Simplex::edge(ids_[order[i - 1]], ids_[order[i]]));
    } else {
        for (const Tri& t : tris_) {
            if (t.dead) continue;
            for (int k = 0; k < 3; ++k) {
                int a = t.v[(k + 1) % 3], b = t.v[(k + 2) % 3];
                if (a == kInf || b == kInf) continue;
                // each finite edge is seen from both sides; keep one
                if (a < b) out.push_back(Simplex::edge(ids_[a], ids_[b]));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::array<int, 3>> Triangulation::adjacency() const {
    std::vector<std::pair<Simplex, int>> order;
    if (degenerate_) return {};
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
        if (!tris_[t].dead && !tris_[t].ghost())
            order.emplace_back(Simplex::triangle(ids_[tris_[t].v[0]], ids_[tris_[t].v[1]], ids_[tris_[t].v[2]]), t);
    std::sort(order.begin(), order.end());
    std::unordered_map<int, int> index;
    for (std::size_t i = 0; i < order.size(); ++i) index[order[i].second] = static_cast<int>(i);
    std::vector<std::array<int, 3>> out(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Tri& tr = tris_[order[i].second];
        for (int s = 0; s < 3; ++s) {
            int k = 0;
            while (ids_[tr.v[k]] != order[i].first.v[s]) ++k;
            int nb = tr.n[k];
            out[i][s] = (nb >= 0 && !tris_[nb].ghost()) ? index.at(nb) : -1;
        }
    }
    return out;
}

std::vector<std::array<PointId, 2>> Triangulation::hull_edges() const {
    std::vector<std::array<PointId, 2>> out;
    if (degenerate_) return out;
    for (const Tri& t : tris_)
        if (!t.dead && t.ghost()) out.push_back({ids_[t.v[0]], ids_[t.v[1]]});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<bool> is_delaunay(const Triangulation& tri, const std::vector<IndexedPoint>& witnesses) {
    auto tris = tri.triangles();
    std::vector<bool> ok(tris.size(), true);
    for (std::size_t i = 0; i < tris.size(); ++i) {
        const Simplex& s = tris[i];
        const Point2& a = tri.point(s.v[0]);
        const Point2& b = tri.point(s.v[1]);
        const Point2& c = tri.point(s.v[2]);
        for (const IndexedPoint& w : witnesses) {
            if (s.has_vertex(w.id)) continue;
            if (in_circle_perturbed(a, s.v[0], b, s.v[1], c, s.v[2], w.p, w.id) > 0) {
                ok[i] = false;
                break;
            }
        }
    }
    return ok;
}

} // namespace mvph
