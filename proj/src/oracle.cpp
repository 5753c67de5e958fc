#include "mvph/oracle.hpp"

#include "mvph/alpha.hpp"
#include "mvph/delaunay.hpp"
#include "mvph/z2matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mvph {

namespace {

bool close(double x, double y, double tol) {
    if (x == kInfinity || y == kInfinity) return x == y;
    return std::abs(x - y) <= tol;
}

std::string show(const std::optional<Interval>& iv) {
    if (!iv) return "(none)";
    std::ostringstream os;
    os.precision(17);
    os << '[' << iv->birth << ", ";
    if (iv->death == kInfinity)
        os << "inf";
    else
        os << iv->death;
    os << ')';
    return os.str();
}

} // namespace

void Barcode::normalize() {
    for (auto& bars : dims) {
        bars.erase(std::remove_if(bars.begin(), bars.end(), [](const Interval& iv) { return iv.empty(); }), bars.end());
        std::sort(bars.begin(), bars.end(), standard_less);
    }
}

Barcode sequential_persistence(const std::vector<IndexedPoint>& points) {
    if (points.empty()) throw std::invalid_argument("sequential_persistence: no points");
    auto fc = global_alpha(Triangulation::build(points));
    Barcode out;
    for (const Bar& b : persistence_with_representatives(fc).bars) out.dims[b.dim].push_back(b.interval);
    out.normalize();
    return out;
}

Comparison compare(const Barcode& a, const Barcode& b, double tol) {
    Barcode x = a, y = b;
    x.normalize();
    y.normalize();
    for (int d = 0; d < 2; ++d) {
        const auto &u = x.dims[d], &v = y.dims[d];
        for (std::size_t i = 0; i < std::max(u.size(), v.size()); ++i) {
            std::optional<Interval> l, r;
            if (i < u.size()) l = u[i];
            if (i < v.size()) r = v[i];
            if (l && r && close(l->birth, r->birth, tol) && close(l->death, r->death, tol)) continue;
            return {false, d, l, r};
        }
    }
    return {};
}

std::string Comparison::describe() const {
    if (match) return "MATCH";
    return "MISMATCH in dimension " + std::to_string(dim) + ": " + show(left) + " vs " + show(right);
}

} // namespace mvph
