#include "dstab/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dstab::oracle {

namespace {

// Value of p along one edge of the box, t in [0,1] from corner a to corner b.
Complex edge_point(const UncertainPolynomial& poly, Complex z, const Vec& a, const Vec& b,
                   double t) {
    Vec q(a.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = a[i] + t * (b[i] - a[i]);
    return poly.eval(z, q);
}

struct GridScan {
    double min_abs = kInf;
    double max_abs = 0.0;
    Vec argmin;
};

GridScan scan_window(const UncertainPolynomial& poly, Complex z, const Vec& lo, const Vec& hi,
                     int per_dim) {
    const std::size_t l = lo.size();
    std::size_t total = 1;
    for (std::size_t d = 0; d < l; ++d) total *= static_cast<std::size_t>(per_dim);

    GridScan out;
    out.argmin = lo;
    Vec q(l);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t d = 0; d < l; ++d) {
            const auto idx = static_cast<int>(rest % static_cast<std::size_t>(per_dim));
            rest /= static_cast<std::size_t>(per_dim);
            const double t = per_dim == 1 ? 0.5 : static_cast<double>(idx) / (per_dim - 1);
            q[d] = lo[d] + t * (hi[d] - lo[d]);
        }
        const double v = std::abs(poly.eval(z, q));
        out.max_abs = std::max(out.max_abs, v);
        if (v < out.min_abs) {
            out.min_abs = v;
            out.argmin = q;
        }
    }
    return out;
}

// Does |p| collapse to zero under repeated zooming around the grid argmin?
// Near a true zero the refined minimum shrinks with the cell size; near a
// smooth positive minimum it stalls at the true minimum value. The coarse
// scan gates the zoom: a zero inside the box forces the coarse minimum down
// to the order of one cell's variation.
bool zoomed_zero(const UncertainPolynomial& poly, Complex z, const ParameterBox& box,
                 int per_dim, double rel_tol) {
    GridScan scan = scan_window(poly, z, box.lower(), box.upper(), per_dim);
    const double scale = std::max(scan.max_abs, 1e-300);
    if (scan.min_abs <= rel_tol * scale) return true;
    if (scan.min_abs > 6.0 * scale / per_dim) return false;

    const std::size_t l = box.dimension();
    Vec cell(l);
    for (std::size_t d = 0; d < l; ++d)
        cell[d] = box.width(d) / std::max(per_dim - 1, 1);

    int stalled = 0;
    for (int level = 0; level < 12; ++level) {
        Vec lo(l), hi(l);
        for (std::size_t d = 0; d < l; ++d) {
            lo[d] = std::max(box.lower()[d], scan.argmin[d] - cell[d]);
            hi[d] = std::min(box.upper()[d], scan.argmin[d] + cell[d]);
            cell[d] = (hi[d] - lo[d]) / 8.0;
        }
        const GridScan fine = scan_window(poly, z, lo, hi, 9);
        const double prev = scan.min_abs;
        scan.min_abs = std::min(scan.min_abs, fine.min_abs);
        scan.argmin = fine.argmin;
        if (scan.min_abs <= rel_tol * scale) return true;
        stalled = scan.min_abs > 0.6 * prev ? stalled + 1 : 0;
        if (stalled >= 2) return false;  // converged to a positive minimum
    }
    return scan.min_abs <= 1e-6 * scale;
}

}  // namespace

WindingResult winding_inclusion(const UncertainPolynomial& poly, Complex z,
                                const ParameterBox& box, const WindingConfig& cfg) {
    if (box.dimension() != 2)
        throw CapacityError("winding inclusion is defined for exactly two parameters");

    // Corner cycle 00 -> 10 -> 11 -> 01 (vertex ids 0, 1, 3, 2).
    const std::array<std::size_t, 4> cycle{0, 1, 3, 2};
    WindingResult out;

    double angle = 0.0;
    Complex prev = edge_point(poly, z, box.vertex(cycle[0]), box.vertex(cycle[1]), 0.0);
    const Complex first = prev;
    for (std::size_t e = 0; e < 4; ++e) {
        const Vec a = box.vertex(cycle[e]);
        const Vec b = box.vertex(cycle[(e + 1) % 4]);
        for (int s = 1; s <= cfg.edge_samples; ++s) {
            const double t = static_cast<double>(s) / cfg.edge_samples;
            const Complex cur =
                (e == 3 && s == cfg.edge_samples) ? first : edge_point(poly, z, a, b, t);
            const double crossv = prev.real() * cur.imag() - prev.imag() * cur.real();
            const double dotv = prev.real() * cur.real() + prev.imag() * cur.imag();
            angle += std::atan2(crossv, dotv);
            prev = cur;
        }
    }
    out.winding = static_cast<int>(std::lround(angle / (2.0 * M_PI)));

    const GridScan scan = scan_window(poly, z, box.lower(), box.upper(), cfg.grid_n);
    out.min_abs_on_grid = scan.min_abs;
    return out;
}

Complex cofactor_det(const std::vector<Complex>& m, std::size_t n) {
    if (n > 6) throw CapacityError("cofactor expansion capped at n = 6");
    if (m.size() != n * n) throw InputError("matrix storage does not match its order");
    if (n == 1) return m[0];

    Complex det{0.0, 0.0};
    std::vector<Complex> minor((n - 1) * (n - 1));
    double sign = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t mc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == col) continue;
                minor[(r - 1) * (n - 1) + mc++] = m[r * n + c];
            }
        }
        det += sign * m[col] * cofactor_det(minor, n - 1);
        sign = -sign;
    }
    return det;
}

namespace {

// Refined minimum of |p| along the segment from corner a to corner b:
// coarse samples, then repeated 1D zooming around the argmin.
double refined_segment_min(const UncertainPolynomial& poly, Complex z, const Vec& a, const Vec& b,
                           double* scale_out) {
    constexpr int kCoarse = 64;
    double best = kInf, best_t = 0.0, scale = 0.0;
    for (int s = 0; s <= kCoarse; ++s) {
        const double t = static_cast<double>(s) / kCoarse;
        const double v = std::abs(edge_point(poly, z, a, b, t));
        scale = std::max(scale, v);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    double cell = 1.0 / kCoarse;
    for (int level = 0; level < 10; ++level) {
        const double lo = std::max(0.0, best_t - cell);
        const double hi = std::min(1.0, best_t + cell);
        cell = (hi - lo) / 16.0;
        for (int s = 0; s <= 16; ++s) {
            const double t = lo + (hi - lo) * s / 16.0;
            const double v = std::abs(edge_point(poly, z, a, b, t));
            if (v < best) {
                best = v;
                best_t = t;
            }
        }
    }
    *scale_out = std::max(*scale_out, scale);
    return best;
}

// Minimum of |p| over the four edges of a two-parameter box, refined. The
// first k at which the value set touches the origin always shows up here,
// because the boundary of the image is covered by the edge images.
double refined_edge_min(const UncertainPolynomial& poly, Complex z, const ParameterBox& box,
                        double* scale_out) {
    const std::array<std::pair<std::size_t, std::size_t>, 4> edges{
        {{0, 1}, {1, 3}, {3, 2}, {2, 0}}};
    double best = kInf;
    for (const auto& [ia, ib] : edges)
        best = std::min(best,
                        refined_segment_min(poly, z, box.vertex(ia), box.vertex(ib), scale_out));
    return best;
}

bool origin_included(const UncertainPolynomial& poly, Complex z, const ParameterBox& scaled,
                     const KmOracleConfig& cfg) {
    const std::size_t l = scaled.dimension();

    if (l == 1) {
        // Affine in the single parameter: the value set is exactly the segment
        // between the endpoint images.
        const Complex a = poly.eval(z, scaled.vertex(0));
        const Complex b = poly.eval(z, scaled.vertex(1));
        const Complex d = b - a;
        const double len2 = std::norm(d);
        double dist;
        if (len2 == 0.0) {
            dist = std::abs(a);
        } else {
            double t = -(a.real() * d.real() + a.imag() * d.imag()) / len2;
            t = std::clamp(t, 0.0, 1.0);
            dist = std::abs(a + t * d);
        }
        const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        return dist <= 1e-9 * scale;
    }

    if (l == 2) {
        const WindingResult w = winding_inclusion(poly, z, scaled, cfg.winding);
        if (w.winding != 0) return true;
        return zoomed_zero(poly, z, scaled, cfg.winding.grid_n, cfg.include_tol);
    }

    if (l == 3) return zoomed_zero(poly, z, scaled, 16, cfg.include_tol);

    throw CapacityError("k_m oracle handles at most three parameters");
}

}  // namespace

namespace {

// Golden-section minimizer of the refined edge minimum over a k bracket;
// rescues entry points whose inclusion window is shorter than the march step
// (the value set grazes the origin through an edge and moves on).
double refine_touch(const UncertainPolynomial& poly, Complex z, const ParameterBox& box,
                    std::span<const double> scale_center, double a, double b, double tol_rel) {
    constexpr double invphi = 0.6180339887498949;
    auto em = [&](double k) {
        double scale = 1e-300;
        const double v = refined_edge_min(poly, z, box.scaled_about(k, scale_center), &scale);
        return std::pair{v, scale};
    };
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    auto [f1, s1] = em(x1);
    auto [f2, s2] = em(x2);
    for (int iter = 0; iter < 60; ++iter) {
        if (f1 <= tol_rel * s1) return x1;
        if (f2 <= tol_rel * s2) return x2;
        if (b - a < 1e-9 * std::max(b, 1.0)) break;
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            s2 = s1;
            x1 = b - invphi * (b - a);
            std::tie(f1, s1) = em(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            s1 = s2;
            x2 = a + invphi * (b - a);
            std::tie(f2, s2) = em(x2);
        }
    }
    return kInf;
}

}  // namespace

double oracle_k_m(const UncertainPolynomial& poly, Complex z, const ParameterBox& box,
                  std::span<const double> scale_center, const KmOracleConfig& cfg) {
    auto included = [&](double k) {
        return origin_included(poly, z, box.scaled_about(k, scale_center), cfg);
    };

    const bool track_edges = box.dimension() == 2;
    struct EdgeSample {
        double k;
        double min_rel;
    };
    std::vector<EdgeSample> trail;
    auto raw_edge_min_rel = [&](double k) {
        const ParameterBox scaled = box.scaled_about(k, scale_center);
        const std::array<std::pair<std::size_t, std::size_t>, 4> edges{
            {{0, 1}, {1, 3}, {3, 2}, {2, 0}}};
        double best = kInf, scale = 1e-300;
        for (const auto& [ia, ib] : edges) {
            const Vec a = scaled.vertex(ia);
            const Vec b = scaled.vertex(ib);
            for (int s = 0; s <= 64; ++s) {
                const double v = std::abs(edge_point(poly, z, a, b, s / 64.0));
                best = std::min(best, v);
                scale = std::max(scale, v);
            }
        }
        return best / scale;
    };

    double lo = 0.0;
    double hit = kInf;
    const double coarse = cfg.k_max / cfg.coarse_steps;
    for (int t = 1; t <= cfg.coarse_steps && !std::isfinite(hit); ++t) {
        const double k = coarse * t;
        if (track_edges) {
            trail.push_back({k, raw_edge_min_rel(k)});
            const std::size_t n = trail.size();
            if (n >= 3 && trail[n - 2].min_rel < trail[n - 3].min_rel &&
                trail[n - 2].min_rel < trail[n - 1].min_rel) {
                const double touch = refine_touch(poly, z, box, scale_center, trail[n - 3].k,
                                                  trail[n - 1].k, cfg.include_tol);
                if (std::isfinite(touch)) return touch;
            }
        }
        if (included(k)) {
            hit = k;
            lo = coarse * (t - 1);
        }
    }
    if (!std::isfinite(hit)) return kInf;

    for (int level = 0; level < cfg.refine_levels; ++level) {
        const double step = (hit - lo) / 10.0;
        if (step <= 0.0) break;
        for (int t = 1; t <= 10; ++t) {
            const double k = lo + step * t;
            if (k >= hit || included(k)) {
                hit = std::min(hit, k);
                break;
            }
            lo = k;
        }
    }
    return hit;
}

double oracle_k_m_resolution(const KmOracleConfig& cfg) {
    return cfg.k_max / cfg.coarse_steps / std::pow(10.0, cfg.refine_levels);
}

}  // namespace dstab::oracle
