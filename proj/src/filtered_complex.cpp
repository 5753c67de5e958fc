#include "mvph/filtered_complex.hpp"

#include "mvph/errors.hpp"

#include <algorithm>

namespace mvph {

bool column_order_less(const std::pair<Simplex, double>& a, const std::pair<Simplex, double>& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
}

FilteredComplex2D::FilteredComplex2D(std::vector<std::pair<Simplex, double>> entries) {
    std::sort(entries.begin(), entries.end(), column_order_less);
    simplices_.reserve(entries.size());
    values_.reserve(entries.size());
    index_.reserve(entries.size());
    for (auto& [s, v] : entries) {
        if (!index_.emplace(s.key(), static_cast<int>(simplices_.size())).second)
            throw InconsistencyError("simplex " + s.str() + " listed twice");
        simplices_.push_back(s);
        values_.push_back(v);
    }
}

double FilteredComplex2D::value_of(const Simplex& s) const {
    int i = find(s);
    if (i < 0) throw ProtocolError("simplex " + s.str() + " not in complex");
    return values_[i];
}

std::vector<int> FilteredComplex2D::boundary(int i) const {
    std::vector<int> col;
    for (const Simplex& f : simplices_[i].facets()) {
        int j = find(f);
        if (j < 0) throw InconsistencyError("facet " + f.str() + " of " + simplices_[i].str() + " missing");
        col.push_back(j);
    }
    std::sort(col.begin(), col.end());
    return col;
}

bool FilteredComplex2D::is_monotone() const {
    for (std::size_t i = 0; i < simplices_.size(); ++i)
        for (const Simplex& f : simplices_[i].facets()) {
            int j = find(f);
            if (j < 0 || j > static_cast<int>(i) || values_[j] > values_[i]) return false;
        }
    return true;
}

std::vector<std::pair<Simplex, double>> FilteredComplex2D::entries() const {
    std::vector<std::pair<Simplex, double>> out;
    out.reserve(simplices_.size());
    for (std::size_t i = 0; i < simplices_.size(); ++i) out.emplace_back(simplices_[i], values_[i]);
    return out;
}

} // namespace mvph
