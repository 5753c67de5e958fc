#pragma once

// In-process message-passing execution of the distributed pipeline. Each worker owns one zone;
// worker 0 also distributes the input, coordinates row q = 0 of the second page and gathers the
// result; worker 1 coordinates row q = 1 and the extension.

#include "mvph/cover.hpp"
#include "mvph/errors.hpp"
#include "mvph/oracle.hpp"
#include "mvph/reconcile.hpp"
#include "mvph/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mvph {

// In workflow order. Expansion requests and replies share the LayerPoints phase.
enum class Phase {
    PointDistribution,
    HullShare,
    LayerPoints,
    OwnerRecords,
    CriticalNonGabriel,
    BarcodeAndMatrices,
    E2Broadcast,
    LiftCoordinates,
    WithheldIntervals,
    FinalBarcode,
};

std::string_view phase_name(Phase p);

struct LocalizedBar {
    int dim = 0;
    Interval interval;
    ZoneSet origin; // nerve simplex whose local persistence produced the bar

    friend bool operator==(const LocalizedBar&, const LocalizedBar&) = default;
};

struct WithheldBar {
    int dim = 0;
    GeneratorId id;
    Interval interval;
};

namespace payload {

struct PointDistribution {
    Grid grid;
    std::vector<int> cell_counts;
    std::vector<IndexedPoint> points;
};
struct HullShare {
    std::vector<IndexedPoint> points;
};
struct LayerRequest {
    std::vector<std::array<int, 2>> cells;
};
struct LayerPoints {
    std::vector<IndexedPoint> points;
};
struct OwnerRecords {
    std::vector<OwnerRecord> records;
};
struct CriticalNonGabriel {
    std::vector<ValueCorrection> corrections;
};
struct BarcodeAndMatrices {
    std::vector<TermShipment> terms;
    std::vector<BlockShipment> blocks;
};
struct E2Broadcast {
    std::vector<LiftRequest> requests;
};
struct LiftCoordinates {
    std::vector<Coords> coords;       // per request: bars of the sender's PH_1
    std::vector<WithheldBar> withheld; // withheld bars referenced by coords
};
struct WithheldIntervals {
    std::vector<WithheldBar> bars;
};
struct FinalBarcode {
    std::vector<LocalizedBar> bars;   // PH_1 from the extension
    std::vector<GeneratorId> consumed; // withheld generators already part of it
};

} // namespace payload

using Payload = std::variant<payload::PointDistribution, payload::HullShare, payload::LayerRequest, payload::LayerPoints,
                             payload::OwnerRecords, payload::CriticalNonGabriel, payload::BarcodeAndMatrices,
                             payload::E2Broadcast, payload::LiftCoordinates, payload::WithheldIntervals,
                             payload::FinalBarcode>;

struct WorkerMessage {
    Phase phase = Phase::PointDistribution;
    int sender = 0;
    int receiver = 0;
    std::uint64_t sequence = 0; // per sender
    Payload payload;
};

struct RunOptions {
    std::optional<std::uint64_t> fuzz_seed; // shuffles every inbox before delivery
    bool optimised_entries = true;
    bool parallel = true; // one thread per worker inside each step
};

struct PhaseTiming {
    std::string name;
    double seconds = 0.0;
};

struct RunStats {
    long messages = 0;
    int expansion_rounds = 0; // max over zones
    std::array<long, 2> shipped{}, withheld{}; // zone generators per dimension
};

struct RunResult {
    Barcode barcode;
    std::vector<LocalizedBar> localized; // sorted by dim, standard order, origin
    std::vector<PhaseTiming> timings;
    RunStats stats;
    bool degenerate = false; // fewer than three points or all collinear: computed directly
};

// Collapse failure with the second-page terms computed before the check stopped the run.
struct CollapseAbort : CollapseError {
    std::vector<Interval> e2_00, e2_10, e2_01, e2_11;
    CollapseAbort(const CollapseError& e) : CollapseError(e) {}
};

// Throws CollapseAbort, std::invalid_argument on bad parameters, DuplicatePoint, and
// ProtocolError / InconsistencyError on internal failures.
RunResult run(const std::vector<IndexedPoint>& points, int m1, int m2, int density, const RunOptions& options = {});

struct EntrySplit {
    std::array<std::vector<int>, 2> shipped, withheld; // zone bar indices per dimension
};

// Zone generators with finite intervals whose rows vanish in every block into the zone are
// withheld; the others are shipped.
EntrySplit apply_optimised_entries(const LocalTerm& zone_term, const std::vector<BlockShipment>& blocks);

// Coordinator bars plus withheld bars not consumed by the extension, sorted. A withheld id that
// appears twice raises ProtocolError.
std::vector<LocalizedBar> gather(std::vector<LocalizedBar> coordinator_bars, const std::vector<WithheldBar>& withheld,
                                 const std::vector<GeneratorId>& consumed);

Barcode to_barcode(const std::vector<LocalizedBar>& bars);

} // namespace mvph
