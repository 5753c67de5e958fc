#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace mvph {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Half-open interval [birth, death); death may be +inf.
struct Interval {
    double birth = 0.0;
    double death = kInfinity;

    bool finite() const { return death != kInfinity; }
    bool empty() const { return !(birth < death); }
    bool contains(double t) const { return birth <= t && t < death; }
    friend bool operator==(const Interval&, const Interval&) = default;

    std::string str() const;
};

// Standard order: birth ascending, then death descending.
inline bool standard_less(const Interval& a, const Interval& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death > b.death;
}

// Endpoint order: death ascending, then birth ascending.
inline bool endpoint_less(const Interval& a, const Interval& b) {
    if (a.death != b.death) return a.death < b.death;
    return a.birth < b.birth;
}

} // namespace mvph
