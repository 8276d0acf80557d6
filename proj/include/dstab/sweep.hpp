#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dstab/bounds.hpp"
#include "dstab/parameter_box.hpp"
#include "dstab/polynomial.hpp"
#include "dstab/region.hpp"
#include "dstab/split.hpp"

namespace dstab {

struct SweepConfig {
    int n_r = 30;
    int n_c = 50;
    std::optional<double> delta_lower;  ///< override every piece's interval when set
    std::optional<double> delta_upper;
    double epsilon = 0.01;
    std::int64_t max_iter = 0;  ///< iteration cap per sweep step; 0 = unlimited
    CutScheme scheme = CutScheme::MaximalCut;
    BoundsConfig bounds;
};

enum class PruneKind { Backward, Forward, Present };

/// A subdomain purged by the global record at a lower / higher / equal
/// frequency than its own.
PruneKind classify_prune(double pruned_delta, double record_delta);

struct RecordEntry {
    double value = 0.0;
    GridPoint freq;
    std::uint64_t stamp = 0;  ///< domains evaluated when the record was set
    int j = 0;
    std::int64_t r = 0;

    friend bool operator==(const RecordEntry&, const RecordEntry&) = default;
};

struct PruneCounts {
    std::uint64_t backward = 0;
    std::uint64_t forward = 0;
    std::uint64_t present = 0;

    std::uint64_t total() const { return backward + forward + present; }
    friend bool operator==(const PruneCounts&, const PruneCounts&) = default;
};

struct PerFrequencyStats {
    GridPoint freq;
    double k_l_min = kInf;
    double k_u_min = kInf;
    std::uint64_t evaluated = 0;
    std::uint64_t splits = 0;

    friend bool operator==(const PerFrequencyStats&, const PerFrequencyStats&) = default;
};

struct SweepReport {
    double k_hat = kInf;
    bool converged = true;
    bool zero_margin = false;
    std::optional<GridPoint> argmin;
    std::vector<RecordEntry> records;
    PruneCounts prune_counts;
    std::uint64_t domains_evaluated = 0;
    std::uint64_t splits = 0;
    std::uint64_t exact_drops = 0;
    std::uint64_t no_intersection_drops = 0;
    std::uint64_t abandoned = 0;  ///< still queued when the iteration cap fired
    std::vector<std::int64_t> iterations_per_step;  ///< r(j), one per sweep step
    std::vector<PerFrequencyStats> per_frequency;   ///< grid order: piece, i, j
    double wall_seconds = 0.0;
};

/// One line of the branch-and-bound event log. `split` rows log every
/// evaluated subdomain (step-initial root copies included), so the row count
/// is domains_evaluated plus one row per prune and per record.
struct TraceRow {
    int j = 0;
    int i = 0;
    std::size_t piece = 0;
    double delta = 0.0;
    double k_l = 0.0;
    double k_u = 0.0;
    const char* event = "";
};
using TraceSink = std::function<void(const TraceRow&)>;

/// Parallel frequency sweep: n_r branches advance together through the n_c
/// sweep steps; every upper bound feeds one shared record k_hat, and any
/// queued subdomain whose lower bound exceeds k_hat/(1+epsilon) is purged,
/// regardless of which frequency set the record. A branch only splits the
/// queued subdomain with the smallest lower bound. A sweep step ends when
/// every branch's queue is empty (or the iteration cap fires).
SweepReport algorithm2(const UncertainPolynomial& poly, const ParameterBox& box,
                       const DRegion& region, const SweepConfig& cfg,
                       const TraceSink& trace = {});

struct ClassicFrequencyResult {
    GridPoint freq;  ///< flat grid: i is the 1-based frequency index, j == 1
    double k_l = kInf;
    double k_u = kInf;
    double k_m = kInf;
    std::int64_t iterations = 0;
    std::uint64_t evaluated = 0;
    bool converged = true;
    bool zero_margin = false;
};

struct ClassicReport {
    double k_tilde_max = kInf;
    std::optional<GridPoint> argmin;
    std::vector<ClassicFrequencyResult> frequencies;
    std::uint64_t domains_evaluated = 0;
    bool all_converged = true;
    double wall_seconds = 0.0;
};

struct ClassicTraceRow {
    std::size_t piece = 0;
    int index = 0;
    double delta = 0.0;
    std::int64_t r = 0;
    double k_l = 0.0;
    double k_u = 0.0;
    std::uint64_t live = 0;
};
using ClassicTraceSink = std::function<void(const ClassicTraceRow&)>;

/// Conventional sweep: each grid frequency converges independently. Every
/// iteration splits every live subdomain midway on its longest edge,
/// tightens the running bound minima, prunes subdomains whose lower bound
/// exceeds the running upper minimum, and stops once the relative gap drops
/// below eps_r.
ClassicReport algorithm1(const UncertainPolynomial& poly, const ParameterBox& box,
                         const DRegion& region, const SweepConfig& cfg, double eps_r,
                         const ClassicTraceSink& trace = {});

struct CompareReport {
    double k_hat_alg2 = kInf;
    double k_tilde_alg1 = kInf;
    std::uint64_t domains_alg2 = 0;
    std::uint64_t domains_alg1 = 0;
    double ratio = 0.0;    ///< domains_alg2 / domains_alg1
    double speedup = 0.0;  ///< wall_alg1 / wall_alg2
    double wall_alg2 = 0.0;
    double wall_alg1 = 0.0;
    bool alg2_converged = true;
    bool alg1_converged = true;
};

/// Head-to-head run of both algorithms on the identical grid; eps_r is the
/// per-frequency tolerance handed to the conventional sweep.
CompareReport compare(const UncertainPolynomial& poly, const ParameterBox& box,
                      const DRegion& region, const SweepConfig& cfg, double eps_r);

}  // namespace dstab
