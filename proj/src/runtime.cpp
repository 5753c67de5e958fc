#include "mvph/runtime.hpp"

#include "mvph/alpha.hpp"
#include "mvph/geometry.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <map>
#include <memory>
#include <random>
#include <thread>
#include <unordered_map>

namespace mvph {

std::string_view phase_name(Phase p) {
    switch (p) {
    case Phase::PointDistribution: return "PointDistribution";
    case Phase::HullShare: return "HullShare";
    case Phase::LayerPoints: return "LayerPoints";
    case Phase::OwnerRecords: return "OwnerRecords";
    case Phase::CriticalNonGabriel: return "CriticalNonGabriel";
    case Phase::BarcodeAndMatrices: return "BarcodeAndMatrices";
    case Phase::E2Broadcast: return "E2Broadcast";
    case Phase::LiftCoordinates: return "LiftCoordinates";
    case Phase::WithheldIntervals: return "WithheldIntervals";
    case Phase::FinalBarcode: return "FinalBarcode";
    }
    return "?";
}

EntrySplit apply_optimised_entries(const LocalTerm& zone_term, const std::vector<BlockShipment>& blocks) {
    EntrySplit out;
    for (int q = 0; q < 2; ++q) {
        std::vector<bool> used(zone_term.bars[q].size(), false);
        for (const BlockShipment& b : blocks) {
            if (b.q != q || b.face != zone_term.sigma) continue;
            for (const Column& c : b.block.cols)
                for (int r : c) used[r] = true;
        }
        for (std::size_t k = 0; k < used.size(); ++k) {
            bool keep = used[k] || zone_term.bars[q][k].death == kInfinity;
            (keep ? out.shipped : out.withheld)[q].push_back(static_cast<int>(k));
        }
    }
    return out;
}

namespace {

bool localized_less(const LocalizedBar& a, const LocalizedBar& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (standard_less(a.interval, b.interval)) return true;
    if (standard_less(b.interval, a.interval)) return false;
    return a.origin < b.origin;
}

} // namespace

std::vector<LocalizedBar> gather(std::vector<LocalizedBar> coordinator_bars, const std::vector<WithheldBar>& withheld,
                                 const std::vector<GeneratorId>& consumed) {
    std::map<std::pair<int, GeneratorId>, bool> seen;
    for (const WithheldBar& w : withheld)
        if (!seen.emplace(std::pair{w.dim, w.id}, true).second)
            throw ProtocolError("withheld generator " + to_string(w.id) + " delivered twice");
    std::vector<GeneratorId> used = consumed;
    std::sort(used.begin(), used.end());
    for (const WithheldBar& w : withheld) {
        if (w.dim == 1 && std::binary_search(used.begin(), used.end(), w.id)) continue;
        coordinator_bars.push_back({w.dim, w.interval, w.id.sigma});
    }
    std::erase_if(coordinator_bars, [](const LocalizedBar& b) { return b.interval.empty(); });
    std::sort(coordinator_bars.begin(), coordinator_bars.end(), localized_less);
    return coordinator_bars;
}

Barcode to_barcode(const std::vector<LocalizedBar>& bars) {
    Barcode out;
    for (const LocalizedBar& b : bars) out.dims[b.dim].push_back(b.interval);
    out.normalize();
    return out;
}

namespace {

template <class T> constexpr Phase phase_of();
template <> constexpr Phase phase_of<payload::PointDistribution>() { return Phase::PointDistribution; }
template <> constexpr Phase phase_of<payload::HullShare>() { return Phase::HullShare; }
template <> constexpr Phase phase_of<payload::LayerRequest>() { return Phase::LayerPoints; }
template <> constexpr Phase phase_of<payload::LayerPoints>() { return Phase::LayerPoints; }
template <> constexpr Phase phase_of<payload::OwnerRecords>() { return Phase::OwnerRecords; }
template <> constexpr Phase phase_of<payload::CriticalNonGabriel>() { return Phase::CriticalNonGabriel; }
template <> constexpr Phase phase_of<payload::BarcodeAndMatrices>() { return Phase::BarcodeAndMatrices; }
template <> constexpr Phase phase_of<payload::E2Broadcast>() { return Phase::E2Broadcast; }
template <> constexpr Phase phase_of<payload::LiftCoordinates>() { return Phase::LiftCoordinates; }
template <> constexpr Phase phase_of<payload::WithheldIntervals>() { return Phase::WithheldIntervals; }
template <> constexpr Phase phase_of<payload::FinalBarcode>() { return Phase::FinalBarcode; }

class Worker {
public:
    Worker(int id, int workers, bool optimised)
        : id_(id), workers_(workers), c0_(0), c1_(std::min(1, workers - 1)), optimised_(optimised) {}

    std::vector<WorkerMessage> inbox, outbox;

    // D0, worker 0 only.
    void distribute(const std::vector<IndexedPoint>& points, int m1, int m2, int density) {
        GridLayout layout = compute_grid(points, m1, m2, density);
        for (int j = 0; j < workers_; ++j)
            send(j, payload::PointDistribution{layout.grid, layout.assignment.cell_counts,
                                               layout.assignment.zone_points[j]});
    }

    void share_hull() {
        expect({Phase::PointDistribution});
        auto msgs = take<payload::PointDistribution>();
        if (msgs.size() != 1 || msgs[0].first != 0) throw ProtocolError("expected one point distribution from worker 0");
        grid_ = std::move(msgs[0].second.grid);
        cell_counts_ = std::move(msgs[0].second.cell_counts);
        own_ = std::move(msgs[0].second.points);
        learn(own_);
        auto hull = hull_points(own_);
        for (int j = 0; j < workers_; ++j) send(j, payload::HullShare{hull});
    }

    void start_expansion() {
        expect({Phase::HullShare});
        std::vector<IndexedPoint> hull;
        for (auto& [from, m] : take<payload::HullShare>()) hull.insert(hull.end(), m.points.begin(), m.points.end());
        expansion_ = std::make_unique<ZoneExpansion>(grid_, cell_counts_, hull_edge_keys(hull), id_, own_);
        request_layer();
    }

    bool expanding() const { return awaiting_ > 0; }

    void serve_layers() {
        expect({Phase::LayerPoints});
        for (auto& [from, m] : take<payload::LayerRequest>())
            send(from, payload::LayerPoints{points_in_cells(grid_, own_, m.cells)});
    }

    void grow() {
        expect({Phase::LayerPoints});
        auto replies = take<payload::LayerPoints>();
        if (static_cast<int>(replies.size()) != awaiting_) throw ProtocolError("layer replies do not match requests");
        if (awaiting_ == 0) return;
        std::vector<IndexedPoint> layer;
        for (auto& [from, m] : replies) layer.insert(layer.end(), m.points.begin(), m.points.end());
        std::sort(layer.begin(), layer.end(), [](const IndexedPoint& a, const IndexedPoint& b) { return a.id < b.id; });
        learn(layer);
        expansion_->add_layer(layer);
        request_layer();
    }

    void announce_owners() {
        expect({});
        k_ = expansion_->result();
        expansion_.reset();
        home_records_ = home_owner_records(k_, zone_fn());
        std::map<int, std::vector<OwnerRecord>> out;
        for (const OwnerRecord& r : home_records_) {
            if (announcing_zone(r.simplex, zone_fn()) != id_) continue;
            for (int o : r.owners) {
                bool home = false;
                for (int i = 0; i <= r.simplex.dim(); ++i) home = home || zone_of(r.simplex.v[i]) == o;
                if (!home) out[o].push_back(r);
            }
        }
        for (auto& [to, records] : out) send(to, payload::OwnerRecords{std::move(records)});
    }

    void reconcile() {
        expect({Phase::OwnerRecords});
        std::vector<OwnerRecord> records = home_records_;
        std::unordered_map<std::uint64_t, int> received;
        for (auto& [from, m] : take<payload::OwnerRecords>())
            for (OwnerRecord& r : m.records) {
                received[r.simplex.key()] = 1;
                records.push_back(std::move(r));
            }
        for (const Simplex& s : foreign_simplices(k_, zone_fn()))
            if (!received.count(s.key())) throw ProtocolError("zone " + std::to_string(id_) + " lacks owners of a simplex");
        std::sort(records.begin(), records.end(),
                  [](const OwnerRecord& a, const OwnerRecord& b) { return a.simplex < b.simplex; });
        intersections_ = intersections_for_zone(id_, records);
        if (k_.simplices.empty()) return;
        local_ = local_alpha_with_list(k_.simplices, point_fn());
        for (auto& [to, list] : critical_non_gabriel_corrections(k_, home_records_, zone_fn()))
            send(to, payload::CriticalNonGabriel{std::move(list)});
    }

    void local_persistence() {
        expect({Phase::CriticalNonGabriel});
        std::vector<ValueCorrection> corrections;
        for (auto& [from, m] : take<payload::CriticalNonGabriel>())
            corrections.insert(corrections.end(), m.corrections.begin(), m.corrections.end());
        if (k_.simplices.empty()) {
            if (!corrections.empty()) throw ProtocolError("corrections sent to an empty zone");
            return;
        }
        FilteredComplex2D zone_complex = apply_corrections(local_.complex, corrections);
        local_ = {};
        for (const IntersectionComplex& ic : intersections_)
            terms_.emplace(ic.zones, LocalTerm::compute(ic.zones, restrict_complex(zone_complex, ic.simplices)));
        terms_.emplace(ZoneSet{id_}, LocalTerm::compute({id_}, std::move(zone_complex)));

        std::vector<BlockShipment> blocks;
        for (const auto& [face, face_term] : terms_) {
            if (face[0] != id_ || face.size() > 2) continue;
            for (const auto& [coface, coface_term] : terms_) {
                if (coface.size() != face.size() + 1 ||
                    !std::includes(coface.begin(), coface.end(), face.begin(), face.end()))
                    continue;
                for (int q = 0; q < 2; ++q) blocks.push_back({face, coface, q, inclusion_block(coface_term, face_term, q)});
            }
        }
        const LocalTerm& zone_term = terms_.at({id_});
        if (optimised_) {
            split_ = apply_optimised_entries(zone_term, blocks);
        } else {
            for (int q = 0; q < 2; ++q) {
                split_.shipped[q].resize(zone_term.bars[q].size());
                std::iota(split_.shipped[q].begin(), split_.shipped[q].end(), 0);
            }
        }

        std::array<payload::BarcodeAndMatrices, 2> rows;
        for (const auto& [sigma, term] : terms_) {
            if (sigma[0] != id_) continue;
            for (int q = 0; q < 2; ++q) {
                TermShipment s{sigma, q, {}, {}};
                if (sigma.size() == 1) {
                    s.bars = split_.shipped[q];
                } else {
                    s.bars.resize(term.bars[q].size());
                    std::iota(s.bars.begin(), s.bars.end(), 0);
                }
                for (int b : s.bars) s.intervals.push_back(term.bars[q][b]);
                rows[q].terms.push_back(std::move(s));
            }
        }
        for (BlockShipment& b : blocks) rows[b.q].blocks.push_back(std::move(b));
        send(c0_, std::move(rows[0]));
        send(c1_, std::move(rows[1]));
    }

    void second_page() {
        expect({Phase::BarcodeAndMatrices});
        std::array<std::vector<TermShipment>, 2> terms;
        std::array<std::vector<BlockShipment>, 2> blocks;
        for (auto& [from, m] : take<payload::BarcodeAndMatrices>()) {
            for (TermShipment& t : m.terms) terms[t.q].push_back(std::move(t));
            for (BlockShipment& b : m.blocks) blocks[b.q].push_back(std::move(b));
        }
        if (id_ == c0_) {
            page0_ = assemble_first_page(terms[0], blocks[0]);
            row0_ = second_page_row(page0_, 0);
            have_row0_ = true;
            auto requests = lift_requests(page0_, row0_.middle);
            for (int j = 0; j < workers_; ++j) send(j, payload::E2Broadcast{requests});
        }
        if (id_ == c1_) {
            page1_ = assemble_first_page(terms[1], blocks[1]);
            row1_ = second_page_row(page1_, 1);
            have_row1_ = true;
            collapse_check(page1_, row1_);
        }
    }

    void lift() {
        expect({Phase::E2Broadcast});
        auto msgs = take<payload::E2Broadcast>();
        if (msgs.size() != 1 || msgs[0].first != c0_) throw ProtocolError("expected one second-page broadcast");
        requests_ = std::move(msgs[0].second.requests);
        payload::LiftCoordinates out;
        const bool has_zone = terms_.count({id_}) != 0;
        std::vector<int> withheld1 = split_.withheld[1];
        std::vector<int> referenced;
        for (const LiftRequest& r : requests_) {
            Coords c;
            if (has_zone && r.interval.death != kInfinity) c = local_lift(id_, terms_, r);
            for (int b : c)
                if (std::binary_search(withheld1.begin(), withheld1.end(), b)) referenced.push_back(b);
            out.coords.push_back(std::move(c));
        }
        std::sort(referenced.begin(), referenced.end());
        referenced.erase(std::unique(referenced.begin(), referenced.end()), referenced.end());
        for (int b : referenced) out.withheld.push_back({1, {{id_}, b}, terms_.at({id_}).bars[1][b]});
        send(c1_, std::move(out));
    }

    void extension() {
        expect({Phase::LiftCoordinates});
        if (id_ == c1_) {
            auto msgs = take<payload::LiftCoordinates>();
            if (static_cast<int>(msgs.size()) != workers_) throw ProtocolError("missing lift coordinates");
            send(c0_, solve(msgs));
        }
        payload::WithheldIntervals w;
        if (const auto it = terms_.find({id_}); it != terms_.end())
            for (int q = 0; q < 2; ++q)
                for (int b : split_.withheld[q]) w.bars.push_back({q, {{id_}, b}, it->second.bars[q][b]});
        send(c0_, std::move(w));
    }

    void finish() {
        expect({Phase::WithheldIntervals, Phase::FinalBarcode});
        if (id_ != c0_) return;
        auto finals = take<payload::FinalBarcode>();
        if (finals.size() != 1) throw ProtocolError("expected one final barcode");
        std::vector<LocalizedBar> bars = std::move(finals[0].second.bars);
        const auto& e00 = row0_.cokernel;
        for (std::size_t k = 0; k < e00.intervals.size(); ++k)
            bars.push_back({0, e00.intervals[k], page0_.terms[0][0].ids[e00.source[k]].sigma});
        std::vector<WithheldBar> withheld;
        for (auto& [from, m] : take<payload::WithheldIntervals>()) {
            for (const WithheldBar& b : m.bars)
                if (b.id.sigma != ZoneSet{from}) throw ProtocolError("withheld bar from a foreign zone");
            withheld.insert(withheld.end(), m.bars.begin(), m.bars.end());
        }
        final_ = gather(std::move(bars), withheld, finals[0].second.consumed);
    }

    // Read by the scheduler after the run.
    const std::vector<LocalizedBar>& final_bars() const { return final_; }
    int rounds() const { return k_.rounds; }
    const EntrySplit& split() const { return split_; }
    bool has_row0() const { return have_row0_; }
    bool has_row1() const { return have_row1_; }
    const SecondPageRow& row0() const { return row0_; }
    const SecondPageRow& row1() const { return row1_; }

private:
    template <class T>
    void send(int to, T body) {
        const Phase p = phase_of<T>();
        if (p < max_received_)
            throw ProtocolError("worker " + std::to_string(id_) + " sends " + std::string(phase_name(p)) + " after " +
                                std::string(phase_name(max_received_)));
        outbox.push_back({p, id_, to, sequence_++, Payload{std::move(body)}});
    }

    void expect(std::initializer_list<Phase> allowed) {
        for (const WorkerMessage& m : inbox) {
            if (std::find(allowed.begin(), allowed.end(), m.phase) == allowed.end())
                throw ProtocolError("worker " + std::to_string(id_) + " got " + std::string(phase_name(m.phase)) +
                                    " out of phase");
            if (m.receiver != id_) throw ProtocolError("misrouted message");
            max_received_ = std::max(max_received_, m.phase);
        }
        std::stable_sort(inbox.begin(), inbox.end(), [](const WorkerMessage& a, const WorkerMessage& b) {
            return std::tie(a.sender, a.sequence) < std::tie(b.sender, b.sequence);
        });
    }

    template <class T>
    std::vector<std::pair<int, T>> take() {
        std::vector<std::pair<int, T>> out;
        for (WorkerMessage& m : inbox)
            if (auto* body = std::get_if<T>(&m.payload)) out.emplace_back(m.sender, std::move(*body));
        return out;
    }

    void learn(const std::vector<IndexedPoint>& pts) {
        for (const IndexedPoint& q : pts) zone_of_point_[q.id] = grid_.zone_of(q.p);
    }
    int zone_of(PointId id) const { return zone_of_point_.at(id); }
    std::function<int(PointId)> zone_fn() const {
        return [this](PointId id) { return zone_of(id); };
    }
    PointLookup point_fn() const {
        return [this](PointId id) -> const Point2& { return k_.local.point(id); };
    }

    void request_layer() {
        awaiting_ = 0;
        if (expansion_->stable()) return;
        std::map<int, std::vector<std::array<int, 2>>> by_zone;
        for (const auto& c : expansion_->next_ring()) by_zone[grid_.zone_of_cell(c[0], c[1])].push_back(c);
        for (auto& [zone, cells] : by_zone) {
            send(zone, payload::LayerRequest{std::move(cells)});
            ++awaiting_;
        }
        if (awaiting_ == 0) throw ProtocolError("unstable zone with nothing to request");
    }

    payload::FinalBarcode solve(const std::vector<std::pair<int, payload::LiftCoordinates>>& lifts) {
        const FirstPageTerm& t0 = page1_.terms[0][1];
        std::map<GeneratorId, Interval> extra;
        for (const auto& [from, m] : lifts)
            for (const WithheldBar& b : m.withheld) extra.emplace(b.id, b.interval);
        std::vector<GeneratorId> extra_ids;
        std::vector<Interval> generators = t0.intervals;
        for (const auto& [id, iv] : extra) {
            extra_ids.push_back(id);
            generators.push_back(iv);
        }
        auto index = [&](const GeneratorId& g) {
            int i = t0.index_of(g);
            if (i >= 0) return i;
            auto it = std::lower_bound(extra_ids.begin(), extra_ids.end(), g);
            if (it == extra_ids.end() || *it != g) throw ProtocolError("lift refers to unknown generator " + to_string(g));
            return t0.size() + static_cast<int>(it - extra_ids.begin());
        };
        QuotientModule e01 = extra.empty() ? row1_.cokernel : quotient(generators, row1_.cokernel.relations);

        ExtensionData ext{e01.intervals, {}, {}};
        for (std::size_t k = 0; k < requests_.size(); ++k) {
            const LiftRequest& r = requests_[k];
            ext.e10.push_back(r.interval);
            Coords x;
            for (const auto& [from, m] : lifts) {
                if (m.coords.size() != requests_.size()) throw ProtocolError("lift coordinate count mismatch");
                for (int b : m.coords[k]) add_into(x, Coords{index({{from}, b})});
            }
            ext.columns.push_back(r.interval.death == kInfinity ? Coords{} : e01.coordinates(x, r.interval.death));
        }
        QuotientModule ph1 = solve_extension(ext);

        payload::FinalBarcode out;
        out.consumed = extra_ids;
        const int n0 = static_cast<int>(e01.intervals.size());
        for (std::size_t k = 0; k < ph1.intervals.size(); ++k) {
            const int s = ph1.source[k];
            ZoneSet origin;
            if (s < n0) {
                int g = e01.source[s];
                origin = g < t0.size() ? t0.ids[g].sigma : extra_ids[g - t0.size()].sigma;
            } else if (!requests_[s - n0].w1.empty()) {
                origin = requests_[s - n0].w1.back().sigma;
            }
            out.bars.push_back({1, ph1.intervals[k], origin});
        }
        return out;
    }

    const int id_, workers_, c0_, c1_;
    const bool optimised_;
    Phase max_received_ = Phase::PointDistribution;
    std::uint64_t sequence_ = 0;

    Grid grid_;
    std::vector<int> cell_counts_;
    std::vector<IndexedPoint> own_;
    std::unordered_map<PointId, int> zone_of_point_;
    std::unique_ptr<ZoneExpansion> expansion_;
    int awaiting_ = 0;

    SubcomplexK k_;
    std::vector<OwnerRecord> home_records_;
    std::vector<IntersectionComplex> intersections_;
    LocalAlpha local_;
    TermMap terms_;
    EntrySplit split_;

    FirstPage page0_, page1_;
    SecondPageRow row0_, row1_;
    bool have_row0_ = false, have_row1_ = false;
    std::vector<LiftRequest> requests_;
    std::vector<LocalizedBar> final_;
};

class Scheduler {
public:
    Scheduler(int workers, const RunOptions& options, RunResult& result)
        : options_(options), result_(result), rng_(options.fuzz_seed.value_or(0)) {
        for (int i = 0; i < workers; ++i) workers_.push_back(std::make_unique<Worker>(i, workers, options.optimised_entries));
    }

    Worker& worker(int i) { return *workers_[i]; }

    // Runs f on every worker (concurrently if enabled), then delivers the messages they sent.
    template <class F>
    void step(const std::string& timing, F f) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<std::exception_ptr> errors(workers_.size());
        auto body = [&](std::size_t i) {
            try {
                f(*workers_[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        };
        if (options_.parallel && workers_.size() > 1) {
            std::vector<std::thread> threads;
            for (std::size_t i = 0; i < workers_.size(); ++i) threads.emplace_back(body, i);
            for (auto& t : threads) t.join();
        } else {
            for (std::size_t i = 0; i < workers_.size(); ++i) body(i);
        }
        record(timing, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
        deliver();
    }

    bool any(bool (Worker::*pred)() const) const {
        return std::any_of(workers_.begin(), workers_.end(), [&](const auto& w) { return ((*w).*pred)(); });
    }

private:
    void record(const std::string& name, double seconds) {
        auto& t = result_.timings;
        auto it = std::find_if(t.begin(), t.end(), [&](const PhaseTiming& p) { return p.name == name; });
        if (it == t.end())
            t.push_back({name, seconds});
        else
            it->seconds += seconds;
    }

    void deliver() {
        for (auto& w : workers_) w->inbox.clear();
        for (auto& w : workers_) {
            for (WorkerMessage& m : w->outbox) {
                if (m.receiver < 0 || m.receiver >= static_cast<int>(workers_.size()))
                    throw ProtocolError("message to unknown worker " + std::to_string(m.receiver));
                workers_[m.receiver]->inbox.push_back(std::move(m));
                ++result_.stats.messages;
            }
            w->outbox.clear();
        }
        if (options_.fuzz_seed)
            for (auto& w : workers_) std::shuffle(w->inbox.begin(), w->inbox.end(), rng_);
    }

    const RunOptions& options_;
    RunResult& result_;
    std::mt19937_64 rng_;
    std::vector<std::unique_ptr<Worker>> workers_;
};

bool degenerate_input(const std::vector<IndexedPoint>& points) {
    if (points.size() < 3) return true;
    const Point2& a = points[0].p;
    std::size_t j = 1;
    while (j < points.size() && points[j].p.x == a.x && points[j].p.y == a.y) ++j;
    if (j == points.size()) return true;
    for (std::size_t k = j + 1; k < points.size(); ++k)
        if (orientation(a, points[j].p, points[k].p) != 0) return false;
    return true;
}

void reject_duplicates(const std::vector<IndexedPoint>& points) {
    std::vector<IndexedPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(),
              [](const IndexedPoint& a, const IndexedPoint& b) { return std::tie(a.p.x, a.p.y) < std::tie(b.p.x, b.p.y); });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].p.x == sorted[i - 1].p.x && sorted[i].p.y == sorted[i - 1].p.y)
            throw DuplicatePoint("points " + std::to_string(sorted[i - 1].id) + " and " + std::to_string(sorted[i].id) +
                                 " coincide");
}

} // namespace

RunResult run(const std::vector<IndexedPoint>& points, int m1, int m2, int density, const RunOptions& options) {
    if (points.empty()) throw std::invalid_argument("run: no points");
    if (m1 <= 0 || m2 <= 0 || density <= 0) throw std::invalid_argument("run: grid and density must be positive");
    reject_duplicates(points);

    RunResult result;
    if (degenerate_input(points)) {
        const auto start = std::chrono::steady_clock::now();
        result.degenerate = true;
        result.barcode = sequential_persistence(points);
        for (int d = 0; d < 2; ++d)
            for (const Interval& iv : result.barcode.dims[d]) result.localized.push_back({d, iv, {0}});
        result.timings.push_back(
            {"D0 direct", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
        return result;
    }

    const int M = m1 * m2;
    Scheduler s(M, options, result);
    s.step("D0 distribute", [&](Worker& w) {
        if (&w == &s.worker(0)) w.distribute(points, m1, m2, density);
    });
    s.step("AC alpha complexes", [](Worker& w) { w.share_hull(); });
    s.step("AC alpha complexes", [](Worker& w) { w.start_expansion(); });
    while (s.any(&Worker::expanding)) {
        s.step("AC alpha complexes", [](Worker& w) { w.serve_layers(); });
        s.step("AC alpha complexes", [](Worker& w) { w.grow(); });
    }
    s.step("AC alpha complexes", [](Worker& w) { w.announce_owners(); });
    s.step("AC alpha complexes", [](Worker& w) { w.reconcile(); });
    s.step("PH local persistence", [](Worker& w) { w.local_persistence(); });
    try {
        s.step("E2 second page", [](Worker& w) { w.second_page(); });
    } catch (const CollapseError& e) {
        CollapseAbort abort(e);
        Worker &c0 = s.worker(0), &c1 = s.worker(std::min(1, M - 1));
        if (c0.has_row0()) {
            abort.e2_00 = c0.row0().cokernel.intervals;
            abort.e2_10 = c0.row0().middle.module.intervals;
        }
        if (c1.has_row1()) {
            abort.e2_01 = c1.row1().cokernel.intervals;
            abort.e2_11 = c1.row1().middle.module.intervals;
        }
        throw abort;
    }
    s.step("L lifts", [](Worker& w) { w.lift(); });
    s.step("Ex extension", [](Worker& w) { w.extension(); });
    s.step("G gather", [](Worker& w) { w.finish(); });

    result.localized = s.worker(0).final_bars();
    result.barcode = to_barcode(result.localized);
    for (int i = 0; i < M; ++i) {
        result.stats.expansion_rounds = std::max(result.stats.expansion_rounds, s.worker(i).rounds());
        for (int q = 0; q < 2; ++q) {
            result.stats.shipped[q] += static_cast<long>(s.worker(i).split().shipped[q].size());
            result.stats.withheld[q] += static_cast<long>(s.worker(i).split().withheld[q].size());
        }
    }
    return result;
}

} // namespace mvph
