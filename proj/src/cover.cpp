#include "mvph/cover.hpp"

#include "mvph/alpha.hpp"
#include "mvph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace mvph {

Grid::Grid(BoundingBox box, GridSpec spec) : box_(box), spec_(spec) {
    const int nxc = nx(), nyc = ny();
    xs_.resize(nxc + 1);
    ys_.resize(nyc + 1);
    for (int k = 0; k <= nxc; ++k) xs_[k] = box.x_min + box.width() * k / nxc;
    for (int k = 0; k <= nyc; ++k) ys_[k] = box.y_min + box.height() * k / nyc;
    xs_[nxc] = box.x_max;
    ys_[nyc] = box.y_max;
    spec_.cell_width = box.width() / nxc;
    spec_.cell_height = box.height() / nyc;
}

namespace {

int slot_of(const std::vector<double>& bounds, double v) {
    int k = static_cast<int>(std::upper_bound(bounds.begin(), bounds.end(), v) - bounds.begin()) - 1;
    return std::clamp(k, 0, static_cast<int>(bounds.size()) - 2);
}

} // namespace

std::array<int, 2> Grid::cell_of(const Point2& p) const { return {slot_of(xs_, p.x), slot_of(ys_, p.y)}; }

int Grid::zone_of(const Point2& p) const {
    auto c = cell_of(p);
    return zone_of_cell(c[0], c[1]);
}

CellRange Grid::zone_cells(int zone) const {
    int zx = zone % spec_.m1, zy = zone / spec_.m1;
    return {zx * spec_.cells_x, (zx + 1) * spec_.cells_x, zy * spec_.cells_y, (zy + 1) * spec_.cells_y};
}

BoundingBox Grid::zone_box(int zone) const {
    CellRange r = zone_cells(zone);
    return {xs_[r.x0], xs_[r.x1], ys_[r.y0], ys_[r.y1]};
}

BoundingBox Grid::cell_box(int cx, int cy) const { return {xs_[cx], xs_[cx + 1], ys_[cy], ys_[cy + 1]}; }

CellRange Grid::grown(const CellRange& r, int rings) const {
    return {std::max(0, r.x0 - rings), std::min(nx(), r.x1 + rings), std::max(0, r.y0 - rings),
            std::min(ny(), r.y1 + rings)};
}

GridLayout compute_grid(const std::vector<IndexedPoint>& points, int m1, int m2, int density) {
    if (points.empty()) throw std::invalid_argument("compute_grid: empty point set");
    if (m1 < 1 || m2 < 1 || density < 1) throw std::invalid_argument("compute_grid: grid and density must be positive");
    BoundingBox tight{points[0].p.x, points[0].p.x, points[0].p.y, points[0].p.y};
    for (const IndexedPoint& q : points) {
        tight.x_min = std::min(tight.x_min, q.p.x);
        tight.x_max = std::max(tight.x_max, q.p.x);
        tight.y_min = std::min(tight.y_min, q.p.y);
        tight.y_max = std::max(tight.y_max, q.p.y);
    }
    double diameter = std::hypot(tight.width(), tight.height());
    double pad = diameter > 0 ? 1e-9 * diameter : 1.0;
    // The margin must survive rounding at the coordinates' magnitude.
    double scale = std::max({std::abs(tight.x_min), std::abs(tight.x_max), std::abs(tight.y_min), std::abs(tight.y_max)});
    pad = std::max(pad, 8 * scale * std::numeric_limits<double>::epsilon());
    BoundingBox box{tight.x_min - pad, tight.x_max + pad, tight.y_min - pad, tight.y_max + pad};

    GridSpec spec;
    spec.m1 = m1;
    spec.m2 = m2;
    spec.density = density;
    const int zones = m1 * m2;
    double per_zone = std::max(1.0, static_cast<double>(points.size()) / density / zones);
    double zone_aspect = (box.width() / m1) / (box.height() / m2);
    spec.cells_x = std::max(1, static_cast<int>(std::lround(std::sqrt(per_zone * zone_aspect))));
    spec.cells_y = std::max(1, static_cast<int>(std::lround(per_zone / spec.cells_x)));

    GridLayout out{Grid(box, spec), {}};
    const Grid& g = out.grid;
    out.assignment.zone_points.resize(zones);
    out.assignment.cell_counts.assign(g.num_cells(), 0);
    for (const IndexedPoint& q : points) {
        auto c = g.cell_of(q.p);
        int z = g.zone_of_cell(c[0], c[1]);
        out.assignment.cell_counts[g.cell_index(c[0], c[1])]++;
        out.assignment.zone_points[z].push_back(q);
        if (!out.assignment.zone_of_point.emplace(q.id, z).second) throw DuplicatePoint("duplicate point id " + std::to_string(q.id));
    }
    for (auto& zp : out.assignment.zone_points)
        std::sort(zp.begin(), zp.end(), [](const IndexedPoint& a, const IndexedPoint& b) { return a.id < b.id; });
    return out;
}

namespace {

bool lex_less(const IndexedPoint& a, const IndexedPoint& b) {
    return a.p.x < b.p.x || (a.p.x == b.p.x && a.p.y < b.p.y);
}

// Extreme vertices in counterclockwise order (collinear points dropped).
std::vector<IndexedPoint> strict_hull(std::vector<IndexedPoint> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    if (pts.size() < 3) return pts;
    std::vector<IndexedPoint> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orientation(h[k - 2].p, h[k - 1].p, pts[i].p) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orientation(h[k - 2].p, h[k - 1].p, pts[i].p) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// Boundary walk including points on hull edges; `closed` is false for collinear input.
std::vector<IndexedPoint> boundary_walk(const std::vector<IndexedPoint>& points, bool& closed) {
    auto h = strict_hull(points);
    closed = h.size() >= 3;
    if (!closed) {
        auto pts = points;
        std::sort(pts.begin(), pts.end(), lex_less);
        return pts;
    }
    std::vector<IndexedPoint> out;
    for (std::size_t k = 0; k < h.size(); ++k) {
        const IndexedPoint &a = h[k], &b = h[(k + 1) % h.size()];
        std::vector<IndexedPoint> on;
        for (const IndexedPoint& q : points)
            if (q.id != a.id && q.id != b.id && orientation(a.p, b.p, q.p) == 0) on.push_back(q);
        const double dx = b.p.x - a.p.x, dy = b.p.y - a.p.y;
        std::sort(on.begin(), on.end(), [&](const IndexedPoint& u, const IndexedPoint& v) {
            // exact along a collinear segment: compare the dominant coordinate
            return std::abs(dx) >= std::abs(dy) ? (dx > 0 ? u.p.x < v.p.x : u.p.x > v.p.x)
                                                : (dy > 0 ? u.p.y < v.p.y : u.p.y > v.p.y);
        });
        out.push_back(a);
        out.insert(out.end(), on.begin(), on.end());
    }
    return out;
}

} // namespace

std::vector<IndexedPoint> hull_points(const std::vector<IndexedPoint>& points) {
    bool closed = false;
    return boundary_walk(points, closed);
}

std::vector<std::uint64_t> hull_edge_keys(const std::vector<IndexedPoint>& points) {
    bool closed = false;
    auto walk = boundary_walk(points, closed);
    std::vector<std::uint64_t> keys;
    const std::size_t n = walk.size();
    for (std::size_t k = 0; k + 1 < n; ++k) keys.push_back(Simplex::edge(walk[k].id, walk[k + 1].id).key());
    if (closed) keys.push_back(Simplex::edge(walk[n - 1].id, walk[0].id).key());
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

ZoneExpansion::ZoneExpansion(const Grid& grid, const std::vector<int>& cell_counts,
                             std::vector<std::uint64_t> global_hull_edges, int zone,
                             const std::vector<IndexedPoint>& own_points)
    : grid_(&grid), cell_counts_(&cell_counts), hull_edges_(std::move(global_hull_edges)), zone_(zone) {
    std::sort(hull_edges_.begin(), hull_edges_.end());
    for (const IndexedPoint& q : own_points) own_ids_.push_back(q.id);
    std::sort(own_ids_.begin(), own_ids_.end());
    box_ = grid.zone_cells(zone);
    if (!own_points.empty()) tri_ = Triangulation::build(own_points);
    evaluate();
    skip_empty_rings();
}

std::vector<std::array<int, 2>> ZoneExpansion::next_ring() const {
    std::vector<std::array<int, 2>> cells;
    CellRange g = grid_->grown(box_, 1);
    for (int cy = g.y0; cy < g.y1; ++cy)
        for (int cx = g.x0; cx < g.x1; ++cx)
            if (!box_.contains(cx, cy) && (*cell_counts_)[grid_->cell_index(cx, cy)] > 0) cells.push_back({cx, cy});
    return cells;
}

void ZoneExpansion::skip_empty_rings() {
    while (!stable_ && !grid_->covers_grid(box_) && next_ring().empty()) box_ = grid_->grown(box_, 1);
}

void ZoneExpansion::add_layer(const std::vector<IndexedPoint>& points) {
    if (stable_) throw ProtocolError("layer points sent to a stable zone");
    tri_.insert(points);
    box_ = grid_->grown(box_, 1);
    ++rounds_;
    evaluate();
    skip_empty_rings();
}

bool ZoneExpansion::disk_reaches_unknown(const Circumdata& c) const {
    const BoundingBox& B = grid_->box();
    double r = std::sqrt(c.squared_radius);
    if (!std::isfinite(r) || !std::isfinite(c.center.x) || !std::isfinite(c.center.y)) return true;
    double scale = std::max({std::abs(c.center.x), std::abs(c.center.y), std::abs(B.x_min), std::abs(B.x_max),
                             std::abs(B.y_min), std::abs(B.y_max), r});
    r += 1e-9 * scale;
    // Quick accept: the disk stays inside the current box.
    const double inf = std::numeric_limits<double>::infinity();
    BoundingBox lo = grid_->cell_box(box_.x0, box_.y0), hi = grid_->cell_box(box_.x1 - 1, box_.y1 - 1);
    BoundingBox inner{box_.x0 == 0 ? -inf : lo.x_min, box_.x1 == grid_->nx() ? inf : hi.x_max,
                      box_.y0 == 0 ? -inf : lo.y_min, box_.y1 == grid_->ny() ? inf : hi.y_max};
    const double slack = 1e-9 * scale;
    if (c.center.x - r > inner.x_min + slack && c.center.x + r < inner.x_max - slack &&
        c.center.y - r > inner.y_min + slack && c.center.y + r < inner.y_max - slack)
        return false;
    auto [cx0, cy0] = grid_->cell_of({std::max(c.center.x - r, B.x_min), std::max(c.center.y - r, B.y_min)});
    auto [cx1, cy1] = grid_->cell_of({std::min(c.center.x + r, B.x_max), std::min(c.center.y + r, B.y_max)});
    if (c.center.x - r > B.x_max || c.center.x + r < B.x_min || c.center.y - r > B.y_max || c.center.y + r < B.y_min)
        return false;
    for (int cy = cy0; cy <= cy1; ++cy)
        for (int cx = cx0; cx <= cx1; ++cx) {
            if (box_.contains(cx, cy) || (*cell_counts_)[grid_->cell_index(cx, cy)] == 0) continue;
            BoundingBox cb = grid_->cell_box(cx, cy);
            double dx = std::max({cb.x_min - c.center.x, 0.0, c.center.x - cb.x_max});
            double dy = std::max({cb.y_min - c.center.y, 0.0, c.center.y - cb.y_max});
            if (dx * dx + dy * dy <= r * r) return true;
        }
    return false;
}

void ZoneExpansion::evaluate() {
    stable_ = true;
    if (own_ids_.empty()) return;
    bool all_known = true;
    for (int cy = 0; cy < grid_->ny() && all_known; ++cy)
        for (int cx = 0; cx < grid_->nx(); ++cx)
            if (!box_.contains(cx, cy) && (*cell_counts_)[grid_->cell_index(cx, cy)] > 0) {
                all_known = false;
                break;
            }
    if (all_known) return;
    if (tri_.degenerate()) {
        stable_ = false;
        return;
    }
    auto own = [&](PointId id) { return std::binary_search(own_ids_.begin(), own_ids_.end(), id); };
    for (const auto& e : tri_.hull_edges()) {
        if (!own(e[0]) && !own(e[1])) continue;
        if (!std::binary_search(hull_edges_.begin(), hull_edges_.end(), Simplex::edge(e[0], e[1]).key())) {
            stable_ = false;
            return;
        }
    }
    for (const Simplex& t : tri_.triangles()) {
        if (!own(t.v[0]) && !own(t.v[1]) && !own(t.v[2])) continue;
        if (disk_reaches_unknown(circumdata_triangle(tri_.point(t.v[0]), tri_.point(t.v[1]), tri_.point(t.v[2])))) {
            stable_ = false;
            return;
        }
    }
}

SubcomplexK ZoneExpansion::result() const {
    if (!stable_) throw ProtocolError("zone " + std::to_string(zone_) + " read before expansion finished");
    SubcomplexK k;
    k.zone = zone_;
    k.box = box_;
    k.rounds = rounds_;
    k.local = tri_;
    auto own = [&](PointId id) { return std::binary_search(own_ids_.begin(), own_ids_.end(), id); };
    for (const Simplex& t : tri_.triangles()) {
        int in = own(t.v[0]) + own(t.v[1]) + own(t.v[2]);
        if (in == 0) continue;
        k.triangles.push_back(t);
        k.classes.push_back(in == 3 ? TriangleClass::Inner : TriangleClass::Boundary);
    }
    std::vector<Simplex> base = k.triangles;
    if (tri_.degenerate()) {
        for (PointId id : own_ids_) base.push_back(Simplex::vertex(id));
        for (const Simplex& e : tri_.edges())
            if (own(e.v[0]) || own(e.v[1])) base.push_back(e);
    }
    k.simplices = close_under_faces(base);
    return k;
}

std::vector<IndexedPoint> points_in_cells(const Grid& grid, const std::vector<IndexedPoint>& zone_points,
                                          const std::vector<std::array<int, 2>>& cells) {
    std::vector<char> wanted(grid.num_cells(), 0);
    for (const auto& c : cells) wanted[grid.cell_index(c[0], c[1])] = 1;
    std::vector<IndexedPoint> out;
    for (const IndexedPoint& q : zone_points) {
        auto c = grid.cell_of(q.p);
        if (wanted[grid.cell_index(c[0], c[1])]) out.push_back(q);
    }
    return out;
}

std::vector<bool> critical_flags(const std::vector<Simplex>& sorted_simplices) {
    std::vector<bool> covered(sorted_simplices.size(), false);
    auto mark = [&](const Simplex& s) {
        auto it = std::lower_bound(sorted_simplices.begin(), sorted_simplices.end(), s);
        if (it != sorted_simplices.end() && *it == s) covered[it - sorted_simplices.begin()] = true;
    };
    for (const Simplex& t : sorted_simplices) {
        if (t.dim() != 2) continue;
        mark(t);
        for (const Simplex& e : t.facets()) {
            mark(e);
            for (const Simplex& v : e.facets()) mark(v);
        }
    }
    std::vector<bool> critical(sorted_simplices.size());
    for (std::size_t i = 0; i < critical.size(); ++i) critical[i] = !covered[i];
    return critical;
}

std::vector<IntersectionComplex> intersections_for_zone(int zone, const std::vector<OwnerRecord>& owners) {
    std::map<ZoneSet, std::vector<Simplex>> acc;
    for (const OwnerRecord& rec : owners) {
        if (!std::binary_search(rec.owners.begin(), rec.owners.end(), zone))
            throw ProtocolError("owner record for " + rec.simplex.str() + " does not include zone " + std::to_string(zone));
        ZoneSet others;
        for (int z : rec.owners)
            if (z != zone) others.push_back(z);
        for (std::size_t a = 0; a < others.size(); ++a) {
            ZoneSet pair{zone, others[a]};
            std::sort(pair.begin(), pair.end());
            acc[pair].push_back(rec.simplex);
            for (std::size_t b = a + 1; b < others.size(); ++b) {
                ZoneSet triple{zone, others[a], others[b]};
                std::sort(triple.begin(), triple.end());
                acc[triple].push_back(rec.simplex);
            }
        }
    }
    std::vector<IntersectionComplex> out;
    for (auto& [zs, simplices] : acc) {
        std::sort(simplices.begin(), simplices.end());
        IntersectionComplex ic{zs, std::move(simplices), {}};
        ic.critical = critical_flags(ic.simplices);
        out.push_back(std::move(ic));
    }
    return out;
}

NerveComplex build_nerve(const std::vector<int>& nonempty_zones, const std::vector<IntersectionComplex>& intersections) {
    NerveComplex n;
    for (int z : nonempty_zones) n.vertices.push_back({z});
    for (const IntersectionComplex& ic : intersections) {
        if (ic.simplices.empty()) continue;
        (ic.zones.size() == 2 ? n.edges : n.triangles).push_back(ic.zones);
    }
    for (auto* v : {&n.vertices, &n.edges, &n.triangles}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return n;
}

} // namespace mvph
