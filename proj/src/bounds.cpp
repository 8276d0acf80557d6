#include "dstab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>

namespace dstab {

namespace {

struct Sample {
    double k;
    double g;
};

// Golden-section descent; stops early as soon as a nonpositive value shows up,
// since callers only need a witness below zero, not the exact minimizer.
template <class F>
Sample golden_min(F&& g, double a, double b, double width_tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = g(x1);
    double f2 = g(x2);
    Sample best = f1 <= f2 ? Sample{x1, f1} : Sample{x2, f2};
    int iter = 0;
    while ((b - a) > width_tol && iter++ < 200 && best.g > 0.0) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = g(x2);
        }
        if (f1 < best.g) best = {x1, f1};
        if (f2 < best.g) best = {x2, f2};
    }
    return best;
}

struct ReachOutcome {
    bool reached = false;
    double k = 0.0;
};

// First k in (start, cap] with g(k) <= 0. Marches forward with doubling
// steps, then bisects the bracketing interval; dips that stay positive at
// the sampled points are probed by golden-section descent so that short
// inclusion windows between samples are still caught.
template <class F>
ReachOutcome first_reach(F&& g, double start, double g_start, double step0, double cap,
                         double k_tol) {
    auto bisect_first = [&](double lo, double hi) {
        while (hi - lo > k_tol * std::max(hi, 1e-30)) {
            const double mid = 0.5 * (lo + hi);
            if (g(mid) <= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    };

    std::vector<Sample> samples;
    samples.push_back({start, g_start});
    double pos = step0;
    bool at_cap = false;
    while (!at_cap) {
        double k = start + pos;
        if (k >= cap) {
            k = cap;
            at_cap = true;
        }
        const double gv = g(k);
        if (gv <= 0.0) return {true, bisect_first(samples.back().k, k)};
        samples.push_back({k, gv});
        const std::size_t n = samples.size();
        if (n >= 3) {
            const Sample& s0 = samples[n - 3];
            const Sample& s1 = samples[n - 2];
            const Sample& s2 = samples[n - 1];
            if (s1.g < s0.g && s1.g < s2.g) {
                // The descent must resolve dips that only touch zero, so its
                // width target is far below the bisection tolerance.
                const Sample dip = golden_min(g, s0.k, s2.k, 1e-12 * std::max(s2.k, 1.0));
                if (dip.g <= 0.0) return {true, bisect_first(s0.k, dip.k)};
            }
        }
        pos *= 2.0;
    }
    return {false, cap};
}

}  // namespace

LowerBound lower_bound(const UncertainPolynomial& poly, Complex z, const ParameterBox& box,
                       std::span<const double> scale_center, const BoundsConfig& cfg) {
    if (scale_center.size() != box.dimension())
        throw InputError("scale center length does not match the box dimension");

    const Complex p0 = poly.eval(z, scale_center);

    // Reference magnitude from the unscaled box: the zero test at the nominal
    // point and the entry tolerance are relative to the family's size at this
    // frequency, not to the current hull, which collapses when a degenerate
    // value set sweeps through the origin.
    double scale_ref = std::abs(p0);
    {
        const VertexImages im = value_set_vertex_images(poly, z, box.scaled_about(1.0, scale_center));
        for (Complex w : im.images) scale_ref = std::max(scale_ref, std::abs(w));
    }
    if (std::abs(p0) <= cfg.geom_tol * scale_ref) return {LowerBoundStatus::ZeroAtNominal, 0.0, {}};

    auto clearance = [&](double k) -> double {
        const VertexImages im =
            value_set_vertex_images(poly, z, box.scaled_about(k, scale_center));
        const Hull h = convex_hull(im.images);
        return hull_origin_clearance(h) - cfg.geom_tol * std::max(hull_scale(h), scale_ref);
    };

    const double g0 = std::abs(p0) * (1.0 - cfg.geom_tol);
    const ReachOutcome hit = first_reach(clearance, 0.0, g0, cfg.k_step, cfg.k_cap, cfg.k_tol);
    if (!hit.reached) return {LowerBoundStatus::NoIntersection, kInf, {}};

    const VertexImages im =
        value_set_vertex_images(poly, z, box.scaled_about(hit.k, scale_center));
    return {LowerBoundStatus::Entered, hit.k, convex_hull(im.images)};
}

CriticalPair critical_vertices(const ParameterBox& box, double k_l, const Hull& hull,
                               const BoundsConfig& cfg) {
    const double scale = std::max(hull_scale(hull), 1e-300);
    const std::size_t n = hull.size();

    auto make_pair = [&](std::size_t ia, std::size_t ib) {
        CriticalPair pair;
        pair.alpha_index = std::min(ia, ib);
        pair.beta_index = std::max(ia, ib);
        pair.alpha = box.vertex(pair.alpha_index);
        pair.beta = box.vertex(pair.beta_index);
        for (std::size_t c = 0; c < box.dimension(); ++c)
            if (pair.alpha[c] != pair.beta[c]) pair.differing.push_back(c);
        return pair;
    };

    if (n == 1) {
        if (std::abs(hull.points[0]) > cfg.geom_tol * std::max(scale, 1.0))
            throw InternalError("origin is not on the hull at k_l = " + std::to_string(k_l));
        return make_pair(hull.source_indices[0], hull.source_indices[0]);
    }

    const std::size_t edge_count = n == 2 ? 1 : n;
    double d_min = kInf;
    for (std::size_t e = 0; e < edge_count; ++e)
        d_min = std::min(d_min,
                         segment_origin_distance(hull.points[e], hull.points[(e + 1) % n]));

    // The bisection leaves the origin within roughly k_tol * scale of the
    // boundary; anything far beyond that means the bracket was wrong.
    const double consistency_band = scale * std::max(100.0 * cfg.k_tol, 10.0 * cfg.geom_tol);
    if (d_min > consistency_band)
        throw InternalError("origin is " + std::to_string(d_min) +
                            " away from the hull boundary at k_l = " + std::to_string(k_l) +
                            "; bisection tolerance too loose");

    const double edge_band = d_min + cfg.geom_tol * scale;
    const double vertex_band = std::max(cfg.geom_tol * scale, 4.0 * d_min);

    std::vector<CriticalPair> candidates;
    for (std::size_t e = 0; e < edge_count; ++e) {
        const Complex a = hull.points[e];
        const Complex b = hull.points[(e + 1) % n];
        if (segment_origin_distance(a, b) > edge_band) continue;
        if (std::abs(a) <= vertex_band)
            candidates.push_back(make_pair(hull.source_indices[e], hull.source_indices[e]));
        if (std::abs(b) <= vertex_band)
            candidates.push_back(
                make_pair(hull.source_indices[(e + 1) % n], hull.source_indices[(e + 1) % n]));
        candidates.push_back(make_pair(hull.source_indices[e], hull.source_indices[(e + 1) % n]));
    }

    const auto best = std::min_element(
        candidates.begin(), candidates.end(), [](const CriticalPair& x, const CriticalPair& y) {
            if (x.m() != y.m()) return x.m() < y.m();
            if (x.alpha_index != y.alpha_index) return x.alpha_index < y.alpha_index;
            return x.beta_index < y.beta_index;
        });
    return *best;
}

std::vector<VertexPath> vertex_paths(const CriticalPair& pair, int cap, unsigned seed) {
    const std::size_t m = pair.m();
    if (m < 2) throw InputError("vertex paths need m >= 2; the bounds are already exact");

    auto path_from_order = [&](const std::vector<std::size_t>& order) {
        VertexPath path;
        path.waypoint_indices.reserve(m + 1);
        std::size_t id = pair.alpha_index;
        path.waypoint_indices.push_back(id);
        for (std::size_t coord : order) {
            id ^= (std::size_t{1} << coord);
            path.waypoint_indices.push_back(id);
        }
        return path;
    };

    double factorial = 1.0;
    for (std::size_t i = 2; i <= m; ++i) factorial *= static_cast<double>(i);

    std::vector<VertexPath> paths;
    if (factorial <= static_cast<double>(cap)) {
        std::vector<std::size_t> order = pair.differing;  // already ascending
        do {
            paths.push_back(path_from_order(order));
        } while (std::next_permutation(order.begin(), order.end()));
        return paths;
    }

    std::vector<std::size_t> asc = pair.differing;
    paths.push_back(path_from_order(asc));
    std::vector<std::size_t> desc(asc.rbegin(), asc.rend());
    paths.push_back(path_from_order(desc));
    SplitMix64 rng(0x70617468730aull ^ seed);
    for (int t = 0; t + 2 < cap; ++t) {
        std::vector<std::size_t> order = asc;
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.next() % i]);
        paths.push_back(path_from_order(order));
    }
    return paths;
}

UpperBound upper_bound(const UncertainPolynomial& poly, Complex z, const ParameterBox& box,
                       std::span<const double> scale_center, double k_l, const CriticalPair& pair,
                       const BoundsConfig& cfg) {
    if (!std::isfinite(k_l)) throw InputError("upper bound needs a finite k_l");
    if (pair.m() <= 1) return {k_l, true};

    const auto paths = vertex_paths(pair, cfg.path_cap, cfg.seed);

    std::vector<std::size_t> used;
    for (const auto& p : paths)
        used.insert(used.end(), p.waypoint_indices.begin(), p.waypoint_indices.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    std::unordered_map<std::size_t, Complex> image;
    image.reserve(used.size());
    double scale_floor = 0.0;  // set by the first evaluation (at k_l)
    auto path_clearance = [&](double k) -> double {
        const ParameterBox scaled = box.scaled_about(k, scale_center);
        double scale = 0.0;
        for (std::size_t id : used) {
            const Complex w = poly.eval(z, scaled.vertex(id));
            image[id] = w;
            scale = std::max(scale, std::abs(w));
        }
        if (scale_floor == 0.0) scale_floor = scale;
        double d = kInf;
        for (const auto& p : paths)
            for (std::size_t t = 0; t + 1 < p.waypoint_indices.size(); ++t)
                d = std::min(d, segment_origin_distance(image[p.waypoint_indices[t]],
                                                        image[p.waypoint_indices[t + 1]]));
        return d - cfg.geom_tol * std::max(scale, scale_floor);
    };

    const double g_at_kl = path_clearance(k_l);
    if (g_at_kl <= 0.0) return {k_l, true};

    const double step0 = cfg.k_step * std::max(1.0, k_l);
    const ReachOutcome hit = first_reach(path_clearance, k_l, g_at_kl, step0, cfg.k_cap, cfg.k_tol);
    if (hit.reached) return {hit.k, true};
    return {cfg.k_cap, false};
}

FrequencyBounds compute_frequency_bounds(const UncertainPolynomial& poly, Complex z,
                                         const ParameterBox& box,
                                         std::span<const double> scale_center,
                                         const BoundsConfig& cfg) {
    FrequencyBounds fb;
    const LowerBound lb = lower_bound(poly, z, box, scale_center, cfg);
    fb.status = lb.status;
    switch (lb.status) {
        case LowerBoundStatus::ZeroAtNominal:
            fb.k_l = fb.k_u = 0.0;
            fb.exact = true;
            return fb;
        case LowerBoundStatus::NoIntersection:
            fb.k_l = fb.k_u = kInf;
            return fb;
        case LowerBoundStatus::Entered:
            break;
    }

    fb.k_l = lb.k;
    fb.pair = critical_vertices(box, lb.k, lb.hull, cfg);
    if (fb.pair->m() <= 1) {
        fb.k_u = fb.k_l;
        fb.exact = true;
        return fb;
    }

    const UpperBound ub = upper_bound(poly, z, box, scale_center, fb.k_l, *fb.pair, cfg);
    fb.k_u = ub.k;
    fb.k_u_capped = !ub.intercepted;
    return fb;
}

}  // namespace dstab
