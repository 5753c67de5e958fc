#pragma once

#include "mvph/simplex.hpp"

#include <unordered_map>
#include <utility>
#include <vector>

namespace mvph {

// Simplices of dimension <= 2 with filtration values, kept in column order:
// by value, then dimension, then vertex tuple.
class FilteredComplex2D {
public:
    FilteredComplex2D() = default;
    explicit FilteredComplex2D(std::vector<std::pair<Simplex, double>> entries);

    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    const Simplex& simplex(int i) const { return simplices_[i]; }
    double value(int i) const { return values_[i]; }
    const std::vector<Simplex>& simplices() const { return simplices_; }
    const std::vector<double>& values() const { return values_; }

    // Column index of s, or -1.
    int find(const Simplex& s) const {
        auto it = index_.find(s.key());
        return it == index_.end() ? -1 : it->second;
    }
    bool contains(const Simplex& s) const { return find(s) >= 0; }
    double value_of(const Simplex& s) const;

    // Boundary of column i as sorted column indices. Throws if a facet is missing.
    std::vector<int> boundary(int i) const;

    // Faces never exceed their cofaces and every facet is present.
    bool is_monotone() const;

    std::vector<std::pair<Simplex, double>> entries() const;

private:
    std::vector<Simplex> simplices_;
    std::vector<double> values_;
    std::unordered_map<std::uint64_t, int> index_;
};

bool column_order_less(const std::pair<Simplex, double>& a, const std::pair<Simplex, double>& b);

} // namespace mvph
