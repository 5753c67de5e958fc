#pragma once

#include "mvph/geometry.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mvph {

// Global ids must stay below this bound so a simplex packs into 64 bits.
inline constexpr PointId kMaxPointId = (PointId{1} << 21) - 2;
inline constexpr PointId kNoVertex = (PointId{1} << 21) - 1;

// Simplex of dimension 0..2 stored as a sorted vertex-id tuple padded with kNoVertex.
struct Simplex {
    std::array<PointId, 3> v{kNoVertex, kNoVertex, kNoVertex};

    static Simplex vertex(PointId a) { return Simplex{{a, kNoVertex, kNoVertex}}; }
    static Simplex edge(PointId a, PointId b) {
        if (b < a) std::swap(a, b);
        return Simplex{{a, b, kNoVertex}};
    }
    static Simplex triangle(PointId a, PointId b, PointId c) {
        std::array<PointId, 3> t{a, b, c};
        std::sort(t.begin(), t.end());
        return Simplex{t};
    }
    static Simplex from_key(std::uint64_t k) {
        return Simplex{{static_cast<PointId>(k >> 42), static_cast<PointId>((k >> 21) & kNoVertex),
                        static_cast<PointId>(k & kNoVertex)}};
    }

    int dim() const { return v[1] == kNoVertex ? 0 : (v[2] == kNoVertex ? 1 : 2); }
    int size() const { return dim() + 1; }
    std::uint64_t key() const {
        return (std::uint64_t{v[0]} << 42) | (std::uint64_t{v[1]} << 21) | std::uint64_t{v[2]};
    }
    bool has_vertex(PointId a) const { return v[0] == a || v[1] == a || v[2] == a; }

    // Codimension-one faces in lexicographic order; empty for a vertex.
    std::vector<Simplex> facets() const {
        switch (dim()) {
        case 1: return {vertex(v[0]), vertex(v[1])};
        case 2: return {edge(v[0], v[1]), edge(v[0], v[2]), edge(v[1], v[2])};
        default: return {};
        }
    }

    // Order by dimension, then lexicographically by vertex tuple.
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
        if (auto c = a.dim() <=> b.dim(); c != 0) return c;
        return a.v <=> b.v;
    }
    friend bool operator==(const Simplex& a, const Simplex& b) = default;

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i <= dim(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + "]";
    }
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const { return std::hash<std::uint64_t>{}(s.key()); }
};

struct IndexedPoint {
    PointId id = 0;
    Point2 p;
};

} // namespace mvph
