#include "dstab/hull.hpp"

#include <algorithm>
#include <cmath>

namespace dstab {

namespace {

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

Hull convex_hull(std::span<const Complex> points) {
    if (points.empty()) throw InputError("convex hull of an empty point set");

    // Sort lexicographically, merge exact duplicates keeping the smallest index.
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a] != points[b]) return lex_less(points[a], points[b]);
        return a < b;
    });
    std::vector<std::size_t> uniq;
    uniq.reserve(order.size());
    for (std::size_t idx : order)
        if (uniq.empty() || points[uniq.back()] != points[idx]) uniq.push_back(idx);

    Hull hull;
    if (uniq.size() == 1) {
        hull.points = {points[uniq[0]]};
        hull.source_indices = {uniq[0]};
        return hull;
    }

    // Lower then upper chain; strict turns only, so collinear interior points drop.
    std::vector<std::size_t> chain;
    chain.reserve(uniq.size() * 2);
    auto build = [&](auto begin, auto end) {
        const std::size_t base = chain.size();
        for (auto it = begin; it != end; ++it) {
            while (chain.size() >= base + 2 &&
                   cross(points[chain[chain.size() - 2]], points[chain.back()], points[*it]) <= 0.0)
                chain.pop_back();
            chain.push_back(*it);
        }
        chain.pop_back();  // endpoint repeats as the next chain's start
    };
    build(uniq.begin(), uniq.end());
    build(uniq.rbegin(), uniq.rend());

    if (chain.size() == 1) {
        // All points collinear: keep the two lexicographic extremes.
        chain = {uniq.front(), uniq.back()};
    }
    hull.points.reserve(chain.size());
    hull.source_indices = std::move(chain);
    for (std::size_t idx : hull.source_indices) hull.points.push_back(points[idx]);
    return hull;
}

double hull_scale(const Hull& hull) {
    double s = 0.0;
    for (Complex p : hull.points) s = std::max(s, std::abs(p));
    return s;
}

double segment_origin_distance(Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(a);
    double t = -(a.real() * d.real() + a.imag() * d.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * d);
}

bool segment_contains_origin(Complex a, Complex b, double tol) {
    if (tol < 0.0) throw InputError("tolerance must be nonnegative");
    const double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return segment_origin_distance(a, b) <= tol * scale;
}

OriginClassification classify_origin(const Hull& hull, double tol) {
    if (tol < 0.0) throw InputError("tolerance must be nonnegative");
    const std::size_t n = hull.size();
    const double scale = hull_scale(hull);

    if (n == 1) {
        if (std::abs(hull.points[0]) <= tol * scale) return {OriginLocation::OnBoundary, 0};
        return {OriginLocation::Outside, 0};
    }
    if (n == 2) {
        if (segment_origin_distance(hull.points[0], hull.points[1]) <= tol * scale)
            return {OriginLocation::OnBoundary, 0};
        return {OriginLocation::Outside, 0};
    }

    bool strictly_inside = true;
    double best_dist = kInf;
    std::size_t best_edge = 0;
    for (std::size_t e = 0; e < n; ++e) {
        const Complex a = hull.points[e];
        const Complex b = hull.points[(e + 1) % n];
        const double len = std::abs(b - a);
        const double signed_dist = len > 0.0 ? cross(a, b, Complex{0.0, 0.0}) / len : std::abs(a);
        if (signed_dist <= tol * scale) strictly_inside = false;
        const double d = segment_origin_distance(a, b);
        if (d < best_dist) {
            best_dist = d;
            best_edge = e;
        }
    }
    if (strictly_inside) return {OriginLocation::Inside, best_edge};
    if (best_dist <= tol * scale) return {OriginLocation::OnBoundary, best_edge};
    return {OriginLocation::Outside, best_edge};
}

double hull_origin_clearance(const Hull& hull) {
    const std::size_t n = hull.size();
    if (n == 1) return std::abs(hull.points[0]);
    if (n == 2) return segment_origin_distance(hull.points[0], hull.points[1]);

    bool inside = true;
    double min_signed = kInf;
    double min_seg = kInf;
    for (std::size_t e = 0; e < n; ++e) {
        const Complex a = hull.points[e];
        const Complex b = hull.points[(e + 1) % n];
        const double len = std::abs(b - a);
        if (len == 0.0) continue;
        const double signed_dist = cross(a, b, Complex{0.0, 0.0}) / len;
        if (signed_dist < 0.0) inside = false;
        min_signed = std::min(min_signed, signed_dist);
        min_seg = std::min(min_seg, segment_origin_distance(a, b));
    }
    // Inside a convex polygon the nearest boundary point realizes the minimal
    // signed edge distance; outside it is the nearest edge segment.
    return inside ? -min_signed : min_seg;
}

}  // namespace dstab
