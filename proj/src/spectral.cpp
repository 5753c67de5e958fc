#include "mvph/spectral.hpp"

#include "mvph/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace mvph {

namespace {

bool is_subset(const ZoneSet& small, const ZoneSet& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool holds_zone(const ZoneSet& sigma, int zone) { return std::binary_search(sigma.begin(), sigma.end(), zone); }

Coords to_page_coords(const std::vector<Coords>& basis_coords, const Coords& basis_combo) {
    Coords out;
    for (int k : basis_combo) add_into(out, basis_coords[k]);
    return out;
}

} // namespace

LocalTerm LocalTerm::compute(ZoneSet sigma, FilteredComplex2D complex) {
    LocalTerm t;
    t.sigma = std::move(sigma);
    t.complex = std::move(complex);
    t.persistence = persistence_with_representatives(t.complex);
    for (const Bar& b : t.persistence.bars) {
        t.bars[b.dim].push_back(b.interval);
        t.reps[b.dim].push_back(b.representative);
    }
    for (int q = 0; q < 2; ++q) t.lookup[q] = CycleLookup::from_persistence(t.complex, t.persistence, q);
    return t;
}

Column embed_chain(const LocalTerm& from, const Column& chain, const LocalTerm& to) {
    Column out;
    out.reserve(chain.size());
    for (int i : chain) {
        int j = to.complex.find(from.complex.simplex(i));
        if (j < 0)
            throw InconsistencyError("simplex of A" + to_string(from.sigma) + " missing from A" + to_string(to.sigma));
        out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SparseZ2Matrix inclusion_block(const LocalTerm& coface, const LocalTerm& face, int q) {
    std::vector<std::pair<Interval, Column>> cycles;
    for (std::size_t k = 0; k < coface.bars[q].size(); ++k)
        cycles.emplace_back(coface.bars[q][k], embed_chain(coface, coface.reps[q][k], face));
    return associated_matrix(cycles, face.lookup[q], face.bars[q]).F;
}

std::string to_string(const ZoneSet& sigma) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < sigma.size(); ++i) os << (i ? "," : "") << sigma[i];
    os << '}';
    return os.str();
}

std::string to_string(const GeneratorId& g) { return to_string(g.sigma) + "#" + std::to_string(g.bar); }

int FirstPageTerm::index_of(const GeneratorId& g) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), g);
    return it != ids.end() && *it == g ? static_cast<int>(it - ids.begin()) : -1;
}

MorphismMatrix FirstPage::morphism(int p, int q) const {
    return {d[p][q], terms[p][q].intervals, terms[p - 1][q].intervals};
}

FirstPage assemble_first_page(const std::vector<TermShipment>& shipments, const std::vector<BlockShipment>& blocks) {
    FirstPage page;
    std::vector<const TermShipment*> sorted;
    for (const TermShipment& s : shipments) {
        if (s.sigma.empty() || s.sigma.size() > 3 || s.q < 0 || s.q > 1)
            throw ProtocolError("first page term out of range: " + to_string(s.sigma));
        sorted.push_back(&s);
    }
    std::sort(sorted.begin(), sorted.end(), [](const TermShipment* a, const TermShipment* b) {
        return std::tie(a->sigma, a->q) < std::tie(b->sigma, b->q);
    });
    for (const TermShipment* s : sorted) {
        FirstPageTerm& term = page.terms[s->sigma.size() - 1][s->q];
        std::vector<int> order(s->bars.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) { return s->bars[x] < s->bars[y]; });
        for (int k : order) {
            term.ids.push_back({s->sigma, s->bars[k]});
            term.intervals.push_back(s->intervals[k]);
        }
    }
    for (int q = 0; q < 2; ++q) {
        for (int p = 0; p < 3; ++p)
            if (!std::is_sorted(page.terms[p][q].ids.begin(), page.terms[p][q].ids.end()) ||
                std::adjacent_find(page.terms[p][q].ids.begin(), page.terms[p][q].ids.end()) != page.terms[p][q].ids.end())
                throw ProtocolError("duplicate first page generator");
        for (int p = 1; p < 3; ++p)
            page.d[p][q] = SparseZ2Matrix(page.terms[p - 1][q].size(), page.terms[p][q].size());
    }
    for (const BlockShipment& b : blocks) {
        const int p = static_cast<int>(b.coface.size()) - 1;
        if (p < 1 || p > 2 || b.face.size() + 1 != b.coface.size() || !is_subset(b.face, b.coface))
            throw ProtocolError("block " + to_string(b.face) + " <- " + to_string(b.coface) + " is not a face relation");
        const FirstPageTerm &rows = page.terms[p - 1][b.q], &cols = page.terms[p][b.q];
        for (int c = 0; c < b.block.ncols(); ++c) {
            if (b.block.cols[c].empty()) continue;
            int j = cols.index_of({b.coface, c});
            if (j < 0) throw ProtocolError("block column for unshipped generator " + to_string(GeneratorId{b.coface, c}));
            for (int r : b.block.cols[c]) {
                int i = rows.index_of({b.face, r});
                if (i < 0) throw ProtocolError("block row for withheld generator " + to_string(GeneratorId{b.face, r}));
                add_into(page.d[p][b.q].cols[j], Column{i});
            }
        }
    }
    return page;
}

FirstPage first_page(const NerveComplex& nerve, const TermMap& terms) {
    std::vector<TermShipment> shipments;
    std::vector<BlockShipment> blocks;
    for (int p = 0; p <= std::min(nerve.dimension(), 2); ++p)
        for (const ZoneSet& sigma : nerve.of_dim(p)) {
            const LocalTerm& t = terms.at(sigma);
            for (int q = 0; q < 2; ++q) {
                TermShipment s{sigma, q, {}, t.bars[q]};
                s.bars.resize(t.bars[q].size());
                std::iota(s.bars.begin(), s.bars.end(), 0);
                shipments.push_back(std::move(s));
                if (p == 0) continue;
                for (std::size_t drop = 0; drop < sigma.size(); ++drop) {
                    ZoneSet face = sigma;
                    face.erase(face.begin() + static_cast<long>(drop));
                    blocks.push_back({face, sigma, q, inclusion_block(t, terms.at(face), q)});
                }
            }
        }
    return assemble_first_page(shipments, blocks);
}

SubmoduleBasis kernel_basis(const FirstPage& page, int p, int q) {
    std::vector<int> col_perm, row_perm;
    MorphismMatrix m = page.morphism(p, q).reordered(&col_perm, &row_perm);
    SubmoduleBasis k = image_kernel(m).kernel;
    for (Coords& c : k.coords) {
        for (int& g : c) g = col_perm[g];
        std::sort(c.begin(), c.end());
    }
    return k;
}

SecondPageRow second_page_row(const FirstPage& page, int q) {
    SecondPageRow row;
    const FirstPageTerm &t0 = page.terms[0][q], &t1 = page.terms[1][q], &t2 = page.terms[2][q];

    std::vector<Relation> boundary_relations;
    for (int j = 0; j < t1.size(); ++j)
        if (!page.d[1][q].cols[j].empty()) boundary_relations.push_back({t1.intervals[j].birth, page.d[1][q].cols[j]});
    row.cokernel = quotient(t0.intervals, boundary_relations);

    KernelQuotient& mid = row.middle;
    mid.kernel = kernel_basis(page, 1, q);
    std::vector<Relation> image_relations;
    for (int j = 0; j < t2.size(); ++j) {
        const Coords& col = page.d[2][q].cols[j];
        if (col.empty()) continue;
        const double a = t2.intervals[j].birth;
        auto c = submodule_coordinates(mid.kernel, t1.intervals, col, a);
        if (!c) throw InconsistencyError("image of " + to_string(t2.ids[j]) + " is not in the kernel (d1 d1 != 0)");
        image_relations.push_back({a, std::move(*c)});
    }
    mid.module = quotient(mid.kernel.intervals, image_relations);
    for (const Coords& c : mid.module.coords) mid.reps.push_back(to_page_coords(mid.kernel.coords, c));

    row.top_kernel = kernel_basis(page, 2, q);
    return row;
}

SecondPage second_page(const FirstPage& page) { return {{second_page_row(page, 0), second_page_row(page, 1)}}; }

void collapse_check(const FirstPage& page, const SecondPageRow& row1) {
    auto describe = [](const Interval& iv, const std::vector<std::string>& sources) {
        std::ostringstream os;
        os << '[' << iv.birth << ", inf) from";
        for (const auto& s : sources) os << ' ' << s;
        return os.str();
    };
    auto sources = [](const FirstPageTerm& term, const Coords& c) {
        std::vector<std::string> out;
        for (int g : c) out.push_back(to_string(term.ids[g]));
        return out;
    };
    const auto& e01 = row1.cokernel;
    for (std::size_t k = 0; k < e01.intervals.size(); ++k)
        if (e01.intervals[k].death == kInfinity)
            throw CollapseError("E2_{0,1}", describe(e01.intervals[k], sources(page.terms[0][1], e01.coords[k])));
    const auto& e11 = row1.middle;
    for (int k = 0; k < e11.size(); ++k)
        if (e11.module.intervals[k].death == kInfinity)
            throw CollapseError("E2_{1,1}", describe(e11.module.intervals[k], sources(page.terms[1][1], e11.reps[k])));
    const auto& k21 = row1.top_kernel;
    for (std::size_t k = 0; k < k21.intervals.size(); ++k)
        if (k21.intervals[k].death == kInfinity)
            throw CollapseError("Ker d1_{2,1}", describe(k21.intervals[k], sources(page.terms[2][1], k21.coords[k])));
}

std::vector<LiftRequest> lift_requests(const FirstPage& page, const KernelQuotient& e10) {
    const FirstPageTerm &t1 = page.terms[1][0], &t2 = page.terms[2][0];
    std::vector<LiftRequest> out;
    for (int k = 0; k < e10.size(); ++k) {
        LiftRequest r;
        r.interval = e10.module.intervals[k];
        const double a = r.interval.birth, b = r.interval.death;
        Coords x = alive_part(e10.reps[k], t1.intervals, a);
        for (int g : x) r.w1.push_back(t1.ids[g]);
        if (b != kInfinity) {
            Coords xb = alive_part(x, t1.intervals, b);
            if (!xb.empty()) {
                std::vector<int> alive;
                std::vector<Coords> columns;
                for (int j = 0; j < t2.size(); ++j) {
                    if (!t2.intervals[j].contains(b)) continue;
                    alive.push_back(j);
                    columns.push_back(alive_part(page.d[2][0].cols[j], t1.intervals, b));
                }
                auto y = solve_combination(columns, xb);
                if (!y) throw InconsistencyError("E2_{1,0} generator does not die in the image at its death value");
                for (int c : *y) r.a2.push_back(t2.ids[alive[c]]);
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

Coords local_lift(int zone, const TermMap& terms, const LiftRequest& request) {
    const LocalTerm& home = terms.at({zone});
    const double a = request.interval.birth, b = request.interval.death;

    std::map<ZoneSet, Column> w1, a2;
    for (const GeneratorId& g : request.w1)
        if (holds_zone(g.sigma, zone)) add_into(w1[g.sigma], terms.at(g.sigma).reps[0][g.bar]);
    for (const GeneratorId& g : request.a2)
        if (holds_zone(g.sigma, zone)) add_into(a2[g.sigma], terms.at(g.sigma).reps[0][g.bar]);

    Column horizontal;
    for (const auto& [sigma, chain] : w1) add_into(horizontal, embed_chain(terms.at(sigma), chain, home));
    auto w0 = solve_chain(home.complex, home.persistence.reduction, horizontal, a);
    if (!w0) throw InconsistencyError("lift: no vertical preimage in A" + to_string(home.sigma));
    Column cycle = std::move(*w0);

    for (const auto& [sigma, term] : terms) {
        if (sigma.size() != 2 || !holds_zone(sigma, zone)) continue;
        Column target;
        if (auto it = w1.find(sigma); it != w1.end()) target = it->second;
        for (const auto& [tau, chain] : a2)
            if (is_subset(sigma, tau)) add_into(target, embed_chain(terms.at(tau), chain, term));
        if (target.empty()) continue;
        auto a1 = solve_chain(term.complex, term.persistence.reduction, target, b);
        if (!a1) throw InconsistencyError("lift: representative is not a boundary in A" + to_string(sigma) + " at its death");
        add_into(cycle, embed_chain(term, *a1, home));
    }
    if (!chain_boundary(home.complex, cycle).empty())
        throw InconsistencyError("lift: extended representative is not a cycle in A" + to_string(home.sigma));
    return express_cycle(home.lookup[1], cycle, b);
}

QuotientModule solve_extension(const ExtensionData& ext) {
    const int n0 = static_cast<int>(ext.e01.size());
    std::vector<Interval> generators = ext.e01;
    std::vector<Relation> relations;
    for (std::size_t k = 0; k < ext.e10.size(); ++k) {
        generators.push_back({ext.e10[k].birth, kInfinity});
        if (ext.e10[k].death == kInfinity) continue;
        Coords c = ext.columns[k];
        add_into(c, Coords{n0 + static_cast<int>(k)});
        relations.push_back({ext.e10[k].death, std::move(c)});
    }
    return quotient(generators, relations);
}

} // namespace mvph
