#include "mvph/geometry.hpp"

#include "mvph/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace mvph {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0; // 2^-53
constexpr double kCcwBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIccBound = (10.0 + 96.0 * kEps) * kEps;
constexpr double kDotBound = (5.0 + 64.0 * kEps) * kEps;
// Below this magnitude the relative bounds may be spoiled by underflow.
constexpr double kTiny = 1e-280;

int sign_of(const cpp_int& v) { return v.sign(); }
int sign_of(double v) { return (v > 0) - (v < 0); }

// Exact integer images of N doubles, all scaled by the same power of two.
template <std::size_t N>
std::array<cpp_int, N> exact_scaled(const std::array<double, N>& xs) {
    std::array<long long, N> mant{};
    std::array<int, N> expo{};
    int emin = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < N; ++i) {
        if (xs[i] == 0.0) continue;
        int e = 0;
        double m = std::frexp(xs[i], &e);
        mant[i] = static_cast<long long>(std::ldexp(m, 53));
        expo[i] = e - 53;
        emin = std::min(emin, expo[i]);
    }
    std::array<cpp_int, N> out;
    for (std::size_t i = 0; i < N; ++i) {
        if (mant[i] == 0) continue;
        out[i] = cpp_int(mant[i]);
        out[i] <<= static_cast<unsigned>(expo[i] - emin);
    }
    return out;
}

int orientation_exact(const Point2& a, const Point2& b, const Point2& c) {
    auto v = exact_scaled<6>({a.x, a.y, b.x, b.y, c.x, c.y});
    cpp_int det = (v[2] - v[0]) * (v[5] - v[1]) - (v[3] - v[1]) * (v[4] - v[0]);
    return sign_of(det);
}

int in_circle_exact(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    auto v = exact_scaled<8>({a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y});
    cpp_int adx = v[0] - v[6], ady = v[1] - v[7];
    cpp_int bdx = v[2] - v[6], bdy = v[3] - v[7];
    cpp_int cdx = v[4] - v[6], cdy = v[5] - v[7];
    cpp_int alift = adx * adx + ady * ady;
    cpp_int blift = bdx * bdx + bdy * bdy;
    cpp_int clift = cdx * cdx + cdy * cdy;
    cpp_int det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                  clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}

// Unnormalised in-circle sign: positive iff d is inside when (a, b, c) is counterclockwise.
int in_circle_raw(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    double adx = a.x - d.x, ady = a.y - d.y;
    double bdx = b.x - d.x, bdy = b.y - d.y;
    double cdx = c.x - d.x, cdy = c.y - d.y;
    double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    double cdxady = cdx * ady, adxcdy = adx * cdy;
    double adxbdy = adx * bdy, bdxady = bdx * ady;
    double alift = adx * adx + ady * ady;
    double blift = bdx * bdx + bdy * bdy;
    double clift = cdx * cdx + cdy * cdy;
    double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                       (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                       (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
    double bound = kIccBound * permanent;
    if (std::isfinite(det) && permanent > kTiny && std::fabs(det) > bound) return sign_of(det);
    return in_circle_exact(a, b, c, d);
}

} // namespace

int orientation(const Point2& a, const Point2& b, const Point2& c) {
    double detleft = (b.x - a.x) * (c.y - a.y);
    double detright = (b.y - a.y) * (c.x - a.x);
    double det = detleft - detright;
    double detsum = std::fabs(detleft) + std::fabs(detright);
    if (std::isfinite(det) && detsum > kTiny && std::fabs(det) > kCcwBound * detsum)
        return sign_of(det);
    return orientation_exact(a, b, c);
}

int in_circle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    int o = orientation(a, b, c);
    if (o == 0) throw DegenerateGeometry("in_circle: collinear triangle");
    return o * in_circle_raw(a, b, c, d);
}

int in_circle_perturbed(const Point2& a, PointId ia, const Point2& b, PointId ib,
                        const Point2& c, PointId ic, const Point2& d, PointId id) {
    int o = orientation(a, b, c);
    if (o == 0) throw DegenerateGeometry("in_circle_perturbed: collinear triangle");
    int s = in_circle_raw(a, b, c, d);
    if (s != 0) return o * s;
    // Derivative of the lifted 4x4 determinant with respect to each lifted coordinate.
    struct Term {
        PointId id;
        int sign;
    };
    std::array<Term, 4> terms{{
        {ia, orientation(b, c, d)},
        {ib, -orientation(a, c, d)},
        {ic, orientation(a, b, d)},
        {id, -o},
    }};
    std::sort(terms.begin(), terms.end(), [](const Term& l, const Term& r) { return l.id < r.id; });
    for (const Term& t : terms)
        if (t.sign != 0) return o * t.sign;
    throw DegenerateGeometry("in_circle_perturbed: unresolved degeneracy");
}

int diametral_side(const Point2& a, const Point2& b, const Point2& p) {
    double apx = a.x - p.x, apy = a.y - p.y;
    double bpx = b.x - p.x, bpy = b.y - p.y;
    double t1 = apx * bpx, t2 = apy * bpy;
    double dot = t1 + t2;
    double mag = std::fabs(t1) + std::fabs(t2);
    if (std::isfinite(dot) && mag > kTiny && std::fabs(dot) > kDotBound * mag) return -sign_of(dot);
    auto v = exact_scaled<6>({a.x, a.y, b.x, b.y, p.x, p.y});
    cpp_int e = (v[0] - v[4]) * (v[2] - v[4]) + (v[1] - v[5]) * (v[3] - v[5]);
    return -sign_of(e);
}

Circumdata circumdata_triangle(const Point2& a, const Point2& b, const Point2& c) {
    if (orientation(a, b, c) == 0) throw DegenerateGeometry("circumdata_triangle: collinear points");
    double bx = b.x - a.x, by = b.y - a.y;
    double cx = c.x - a.x, cy = c.y - a.y;
    double d = 2.0 * (bx * cy - by * cx);
    double b2 = bx * bx + by * by;
    double c2 = cx * cx + cy * cy;
    double ux = (cy * b2 - by * c2) / d;
    double uy = (bx * c2 - cx * b2) / d;
    return {{a.x + ux, a.y + uy}, ux * ux + uy * uy};
}

Circumdata circumdata_edge(const Point2& a, const Point2& b) {
    if (a == b) throw DegenerateGeometry("circumdata_edge: coincident endpoints");
    return {{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, 0.25 * squared_distance(a, b)};
}

double squared_distance(const Point2& a, const Point2& b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

} // namespace mvph
