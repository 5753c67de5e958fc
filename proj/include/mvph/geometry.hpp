#pragma once

#include <cstdint>

namespace mvph {

using PointId = std::uint32_t;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point2&, const Point2&) = default;
};

struct BoundingBox {
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;

    // Half-open membership: x_min <= x < x_max, y_min <= y < y_max.
    bool contains(const Point2& p) const {
        return x_min <= p.x && p.x < x_max && y_min <= p.y && p.y < y_max;
    }
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct Circumdata {
    Point2 center;
    double squared_radius = 0.0;
};

// Sign of det[[bx-ax, by-ay], [cx-ax, cy-ay]]: +1 counterclockwise, -1 clockwise, 0 collinear.
int orientation(const Point2& a, const Point2& b, const Point2& c);

// +1 if d is strictly inside the circle through a, b, c, 0 if on it, -1 outside.
// The orientation of (a, b, c) is normalised internally. Throws DegenerateGeometry if collinear.
int in_circle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// in_circle with cocircular ties broken by perturbing each point's lifted coordinate
// by an infinitesimal ordered by id (smaller id dominates). Never returns 0.
int in_circle_perturbed(const Point2& a, PointId ia, const Point2& b, PointId ib,
                        const Point2& c, PointId ic, const Point2& d, PointId id);

// +1 if p is strictly inside the disk with diameter ab, 0 on its boundary, -1 outside.
int diametral_side(const Point2& a, const Point2& b, const Point2& p);

Circumdata circumdata_triangle(const Point2& a, const Point2& b, const Point2& c);
Circumdata circumdata_edge(const Point2& a, const Point2& b);

double squared_distance(const Point2& a, const Point2& b);

} // namespace mvph
