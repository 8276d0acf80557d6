#include "dstab/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <string>

namespace dstab {

PruneKind classify_prune(double pruned_delta, double record_delta) {
    if (pruned_delta < record_delta) return PruneKind::Backward;
    if (pruned_delta > record_delta) return PruneKind::Forward;
    return PruneKind::Present;
}

namespace {

const char* prune_event_name(PruneKind kind) {
    switch (kind) {
        case PruneKind::Backward: return "prune_backward";
        case PruneKind::Forward: return "prune_forward";
        case PruneKind::Present: return "prune_present";
    }
    return "";
}

struct QueueOrder {
    bool operator()(const Subdomain& a, const Subdomain& b) const {
        if (a.k_l != b.k_l) return a.k_l < b.k_l;
        return a.seq < b.seq;
    }
};
using Queue = std::set<Subdomain, QueueOrder>;

std::vector<BoundaryPiece> effective_pieces(const DRegion& region, const SweepConfig& cfg) {
    std::vector<BoundaryPiece> pieces;
    pieces.reserve(region.pieces.size());
    for (const auto& p : region.pieces) {
        const double dl = cfg.delta_lower.value_or(p.delta_lower());
        const double du = cfg.delta_upper.value_or(p.delta_upper());
        pieces.push_back(p.with_interval(dl, du));
    }
    return pieces;
}

int depth_cap_for(const ParameterBox& box, const BoundsConfig& bounds) {
    const double range = std::max(box.diameter() / bounds.k_tol, 4.0);
    return static_cast<int>(
        std::ceil(10.0 * static_cast<double>(box.dimension()) * std::log2(range)));
}

// Driver state shared by the init and split phases of one run.
struct Alg2State {
    const UncertainPolynomial& poly;
    const ParameterBox& root;
    const SweepConfig& cfg;
    const TraceSink& trace;
    SweepReport& report;

    std::vector<Queue> queues;  // one per branch, reused across sweep steps
    std::uint64_t next_seq = 0;
    int depth_cap = 0;
    bool zero_found = false;

    double purge_threshold() const { return report.k_hat / (1.0 + cfg.epsilon); }

    PerFrequencyStats& stats_for(const GridPoint& gp) {
        const std::size_t idx = gp.piece * static_cast<std::size_t>(cfg.n_r) * cfg.n_c +
                                static_cast<std::size_t>(gp.i - 1) * cfg.n_c +
                                static_cast<std::size_t>(gp.j - 1);
        return report.per_frequency[idx];
    }

    void emit(const GridPoint& gp, double k_l, double k_u, const char* event) const {
        if (trace) trace(TraceRow{gp.j, gp.i, gp.piece, gp.delta, k_l, k_u, event});
    }

    void prune(const Subdomain& sub) {
        const RecordEntry& rec = report.records.back();
        const PruneKind kind = classify_prune(sub.freq.delta, rec.freq.delta);
        switch (kind) {
            case PruneKind::Backward: ++report.prune_counts.backward; break;
            case PruneKind::Forward: ++report.prune_counts.forward; break;
            case PruneKind::Present: ++report.prune_counts.present; break;
        }
        emit(sub.freq, sub.k_l, sub.k_u, prune_event_name(kind));
    }

    // Purge every queued subdomain that the current record excludes.
    void purge_all_queues() {
        const double threshold = purge_threshold();
        for (Queue& q : queues) {
            auto it = q.begin();
            while (it != q.end() && it->k_l <= threshold) ++it;
            for (auto doomed = it; doomed != q.end(); ++doomed) prune(*doomed);
            q.erase(it, q.end());
        }
    }

    // Evaluate one subdomain's bounds, fold them into the global record, and
    // queue it if it still needs splitting. Returns false on a zero margin.
    bool consider(Subdomain&& sub, Complex z, std::int64_t r) {
        const FrequencyBounds fb =
            compute_frequency_bounds(poly, z, sub.box, root.nominal(), cfg.bounds);
        ++report.domains_evaluated;

        PerFrequencyStats& stats = stats_for(sub.freq);
        ++stats.evaluated;
        stats.k_l_min = std::min(stats.k_l_min, fb.k_l);
        emit(sub.freq, fb.k_l, fb.k_u, "split");

        if (fb.status == LowerBoundStatus::ZeroAtNominal) {
            report.k_hat = 0.0;
            report.records.push_back(
                RecordEntry{0.0, sub.freq, report.domains_evaluated, sub.freq.j, r});
            emit(sub.freq, 0.0, 0.0, "record");
            report.argmin = sub.freq;
            report.zero_margin = true;
            zero_found = true;
            return false;
        }

        if (!fb.k_u_capped && std::isfinite(fb.k_u)) {
            stats.k_u_min = std::min(stats.k_u_min, fb.k_u);
            if (fb.k_u < report.k_hat) {
                report.k_hat = fb.k_u;
                report.records.push_back(
                    RecordEntry{fb.k_u, sub.freq, report.domains_evaluated, sub.freq.j, r});
                report.argmin = sub.freq;
                emit(sub.freq, fb.k_l, fb.k_u, "record");
                purge_all_queues();
            }
        }

        if (fb.status == LowerBoundStatus::NoIntersection) {
            ++report.no_intersection_drops;
            return true;
        }
        if (fb.pair->m() <= 1) {
            ++report.exact_drops;
            return true;
        }

        sub.k_l = fb.k_l;
        sub.k_u = fb.k_u;
        sub.pair = *fb.pair;
        if (sub.k_l > purge_threshold()) {
            prune(sub);
            return true;
        }
        sub.seq = next_seq++;
        queues[sub.freq.piece * cfg.n_r + (sub.freq.i - 1)].insert(std::move(sub));
        return true;
    }
};

}  // namespace

SweepReport algorithm2(const UncertainPolynomial& poly, const ParameterBox& box,
                       const DRegion& region, const SweepConfig& cfg, const TraceSink& trace) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!(cfg.epsilon > 0.0)) throw InputError("epsilon must be positive");

    const std::vector<BoundaryPiece> pieces = effective_pieces(region, cfg);
    const FrequencyGrid grid = make_grid(DRegion{pieces}, cfg.n_r, cfg.n_c);
    const std::size_t branch_count = pieces.size() * static_cast<std::size_t>(cfg.n_r);

    SweepReport report;
    report.per_frequency.reserve(grid.points.size());
    for (const GridPoint& gp : grid.points) report.per_frequency.push_back({gp});
    report.iterations_per_step.reserve(cfg.n_c);

    Alg2State st{poly, box, cfg, trace, report, {}, 0, depth_cap_for(box, cfg.bounds), false};
    st.queues.resize(branch_count);

    for (int j = 1; j <= cfg.n_c && !st.zero_found; ++j) {
        // Fresh root copy per branch for this sweep step.
        const std::size_t per_piece = static_cast<std::size_t>(cfg.n_r) * cfg.n_c;
        for (std::size_t b = 0; b < branch_count && !st.zero_found; ++b) {
            const std::size_t piece = b / cfg.n_r;
            const std::size_t i = b % cfg.n_r;
            const GridPoint gp =
                grid.points[piece * per_piece + i * cfg.n_c + static_cast<std::size_t>(j - 1)];
            const Complex z = pieces[piece].sweep_point(gp.delta);
            st.consider(Subdomain{box, gp, 0.0, kInf, {}, 0, 0}, z, 1);
        }

        std::int64_t r = 1;
        while (!st.zero_found) {
            bool any_live = false;
            for (const Queue& q : st.queues) any_live = any_live || !q.empty();
            if (!any_live) break;
            if (cfg.max_iter > 0 && r == cfg.max_iter + 1) {
                report.converged = false;
                for (Queue& q : st.queues) {
                    report.abandoned += q.size();
                    q.clear();
                }
                break;
            }

            for (std::size_t b = 0; b < branch_count && !st.zero_found; ++b) {
                Queue& q = st.queues[b];
                if (q.empty()) continue;
                Subdomain sub = *q.begin();
                q.erase(q.begin());

                if (sub.k_l > st.purge_threshold()) {
                    // The queue is ordered by k_l, so everything left fails too.
                    st.prune(sub);
                    for (const Subdomain& rest : q) st.prune(rest);
                    q.clear();
                    continue;
                }
                if (sub.depth >= st.depth_cap)
                    throw InternalError("split depth cap " + std::to_string(st.depth_cap) +
                                        " reached; check tolerance configuration");

                const std::size_t cut = choose_cut_coordinate(sub, box, cfg.scheme);
                auto [lo_half, hi_half] = split_subdomain(sub, cut);
                ++report.splits;
                ++st.stats_for(sub.freq).splits;

                const Complex z = pieces[sub.freq.piece].sweep_point(sub.freq.delta);
                if (!st.consider(std::move(lo_half), z, r)) break;
                if (!st.consider(std::move(hi_half), z, r)) break;
            }
            ++r;
        }
        report.iterations_per_step.push_back(r);
    }

    if (!report.records.empty()) {
        report.k_hat = report.records.back().value;
        report.argmin = report.records.back().freq;
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

ClassicReport algorithm1(const UncertainPolynomial& poly, const ParameterBox& box,
                         const DRegion& region, const SweepConfig& cfg, double eps_r,
                         const ClassicTraceSink& trace) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!(eps_r > 0.0)) throw InputError("eps_r must be positive");

    const std::vector<BoundaryPiece> pieces = effective_pieces(region, cfg);
    const std::size_t per_piece = static_cast<std::size_t>(cfg.n_r) * cfg.n_c;

    ClassicReport report;
    report.frequencies.reserve(pieces.size() * per_piece);

    auto longest_edge = [](const ParameterBox& b) {
        std::size_t best = 0;
        double w = -1.0;
        for (std::size_t c = 0; c < b.dimension(); ++c)
            if (b.width(c) > w) {
                w = b.width(c);
                best = c;
            }
        return best;
    };

    for (std::size_t piece = 0; piece < pieces.size(); ++piece) {
        const double dl = pieces[piece].delta_lower();
        const double span = pieces[piece].delta_upper() - dl;
        for (std::size_t f = 0; f < per_piece; ++f) {
            const double delta = dl + span * static_cast<double>(f) / static_cast<double>(per_piece);
            const GridPoint gp{piece, static_cast<int>(f + 1), 1, delta};
            const Complex z = pieces[piece].sweep_point(delta);

            ClassicFrequencyResult res;
            res.freq = gp;

            const FrequencyBounds root =
                compute_frequency_bounds(poly, z, box, box.nominal(), cfg.bounds);
            ++report.domains_evaluated;
            ++res.evaluated;
            res.iterations = 1;
            res.k_l = root.k_l;
            res.k_u = root.k_u;
            if (trace) trace({piece, gp.i, delta, 1, root.k_l, root.k_u, 1});

            if (root.status == LowerBoundStatus::ZeroAtNominal) {
                res.k_m = 0.0;
                res.zero_margin = true;
            } else if (root.status == LowerBoundStatus::NoIntersection) {
                res.k_m = kInf;  // this frequency never constrains the margin
            } else {
                double k_u_run = root.k_u;
                double k_l_r = root.k_l;
                std::vector<Subdomain> live;
                if ((k_u_run - k_l_r) / k_l_r >= eps_r)
                    live.push_back(Subdomain{box, gp, root.k_l, root.k_u, *root.pair, 0, 0});

                while (!live.empty()) {
                    if (cfg.max_iter > 0 && res.iterations >= cfg.max_iter) {
                        res.converged = false;
                        report.all_converged = false;
                        break;
                    }
                    ++res.iterations;

                    std::vector<Subdomain> children;
                    children.reserve(live.size() * 2);
                    double k_l_min = kInf;
                    double k_u_min = kInf;
                    for (const Subdomain& sub : live) {
                        auto halves = split_subdomain(sub, longest_edge(sub.box));
                        for (Subdomain* child : {&halves.first, &halves.second}) {
                            const FrequencyBounds fb = compute_frequency_bounds(
                                poly, z, child->box, box.nominal(), cfg.bounds);
                            ++report.domains_evaluated;
                            ++res.evaluated;
                            k_l_min = std::min(k_l_min, fb.k_l);
                            k_u_min = std::min(k_u_min, fb.k_u);
                            if (fb.status != LowerBoundStatus::Entered) continue;
                            child->k_l = fb.k_l;
                            child->k_u = fb.k_u;
                            child->pair = *fb.pair;
                            children.push_back(std::move(*child));
                        }
                    }

                    k_l_r = k_l_min;
                    k_u_run = std::min(k_u_run, k_u_min);
                    res.k_l = k_l_r;
                    res.k_u = k_u_run;

                    live.clear();
                    for (Subdomain& child : children)
                        if (child.k_l <= k_u_run) live.push_back(std::move(child));

                    if (trace)
                        trace({piece, gp.i, delta, res.iterations, k_l_r, k_u_run,
                               live.size()});
                    if (!std::isfinite(k_l_r) || (k_u_run - k_l_r) / k_l_r < eps_r) break;
                }
                res.k_m = k_u_run;
            }

            if (res.k_m < report.k_tilde_max) {
                report.k_tilde_max = res.k_m;
                report.argmin = gp;
            }
            report.frequencies.push_back(std::move(res));
        }
    }

    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

CompareReport compare(const UncertainPolynomial& poly, const ParameterBox& box,
                      const DRegion& region, const SweepConfig& cfg, double eps_r) {
    CompareReport out;
    const SweepReport fast = algorithm2(poly, box, region, cfg);
    const ClassicReport classic = algorithm1(poly, box, region, cfg, eps_r);

    out.k_hat_alg2 = fast.k_hat;
    out.k_tilde_alg1 = classic.k_tilde_max;
    out.domains_alg2 = fast.domains_evaluated;
    out.domains_alg1 = classic.domains_evaluated;
    out.ratio = classic.domains_evaluated == 0
                    ? 0.0
                    : static_cast<double>(fast.domains_evaluated) /
                          static_cast<double>(classic.domains_evaluated);
    out.wall_alg2 = fast.wall_seconds;
    out.wall_alg1 = classic.wall_seconds;
    out.speedup = fast.wall_seconds > 0.0 ? classic.wall_seconds / fast.wall_seconds : 0.0;
    out.alg2_converged = fast.converged;
    out.alg1_converged = classic.all_converged;
    return out;
}

}  // namespace dstab
