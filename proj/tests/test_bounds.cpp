#include <doctest.h>

#include <cmath>

#include "dstab/bounds.hpp"
#include "dstab/oracle.hpp"
#include "support/instances.hpp"
#include "support/symbolic.hpp"

using namespace dstab;
using namespace dstab::testsupport;

namespace {

const BoundsConfig kCfg{};

// p(s, q) = 1 + q + s over q in [-2, 2], scaled about q0 = 0.
UncertainPolynomial shifted_line() {
    return UncertainPolynomial::from_monomials(
        1, 1, {{MonomialTerm{1.0, {0u}}, MonomialTerm{1.0, {1u}}}, {MonomialTerm{1.0, {0u}}}});
}

}  // namespace

TEST_CASE("first-entry lower bound on the analytic one-parameter family") {
    const auto poly = shifted_line();
    const ParameterBox box({-2.0}, {2.0}, {0.0});

    SUBCASE("origin enters at k = 0.5") {
        // vertex images at scale k: {1-2k, 1+2k}
        const LowerBound lb = lower_bound(poly, Complex{0.0, 0.0}, box, box.nominal(), kCfg);
        REQUIRE(lb.status == LowerBoundStatus::Entered);
        CHECK(lb.k == doctest::Approx(0.5).epsilon(1e-4));
    }
    SUBCASE("an imaginary offset never reaches the origin") {
        const LowerBound lb = lower_bound(poly, Complex{0.0, 10.0}, box, box.nominal(), kCfg);
        CHECK(lb.status == LowerBoundStatus::NoIntersection);
        CHECK(std::isinf(lb.k));
    }
    SUBCASE("zero at the nominal point is reported, not searched") {
        // p(0, q) = 1 + q with q0 = -1.
        const ParameterBox shifted({-2.0}, {2.0}, {-1.0});
        const LowerBound lb =
            lower_bound(poly, Complex{0.0, 0.0}, shifted, shifted.nominal(), kCfg);
        CHECK(lb.status == LowerBoundStatus::ZeroAtNominal);
    }
}

TEST_CASE("critical vertices of the analytic family") {
    const auto poly = shifted_line();
    const ParameterBox box({-2.0}, {2.0}, {0.0});
    const LowerBound lb = lower_bound(poly, Complex{0.0, 0.0}, box, box.nominal(), kCfg);
    REQUIRE(lb.status == LowerBoundStatus::Entered);

    // The origin crosses the segment exactly at the image of q = -2, so the
    // pair is either that vertex alone (m = 0, to the tolerance of the
    // bisection) or the full segment (-2, 2) with m = 1. Both are exact.
    const CriticalPair pair = critical_vertices(box, lb.k, lb.hull, kCfg);
    CHECK(pair.m() <= 1);
    CHECK(pair.alpha == Vec{-2.0});
    if (pair.m() == 1) CHECK(pair.beta == Vec{2.0});
}

TEST_CASE("a coincident-vertex entry gives m = 0") {
    // Degenerate box: the value set is a single moving point, so the origin
    // is met at a hull vertex. p(0, q) = 1 + q about center 0 with the box
    // pinned at q = -1 reaches the origin at k = 1.
    const auto poly = shifted_line();
    const ParameterBox point({-1.0}, {-1.0}, {-1.0});
    const Vec center{0.0};
    const LowerBound lb = lower_bound(poly, Complex{0.0, 0.0}, point, center, kCfg);
    REQUIRE(lb.status == LowerBoundStatus::Entered);
    CHECK(lb.k == doctest::Approx(1.0).epsilon(1e-4));
    const CriticalPair pair = critical_vertices(point, lb.k, lb.hull, kCfg);
    CHECK(pair.m() == 0);
}

TEST_CASE("vertex path enumeration") {
    CriticalPair pair;
    pair.alpha_index = 0;

    SUBCASE("m = 2 gives both flip orders") {
        pair.beta_index = 3;
        pair.differing = {0, 1};
        const auto paths = vertex_paths(pair, 720, 0);
        REQUIRE(paths.size() == 2);
        CHECK(paths[0].waypoint_indices == std::vector<std::size_t>{0, 1, 3});
        CHECK(paths[1].waypoint_indices == std::vector<std::size_t>{0, 2, 3});
    }
    SUBCASE("m = 3 gives all six orders") {
        pair.beta_index = 7;
        pair.differing = {0, 1, 2};
        CHECK(vertex_paths(pair, 720, 0).size() == 6);
    }
    SUBCASE("past the cap: canonical pair plus seeded samples") {
        pair.beta_index = (std::size_t{1} << 7) - 1;
        pair.differing = {0, 1, 2, 3, 4, 5, 6};  // 7! = 5040 > 720
        const auto paths = vertex_paths(pair, 720, 0);
        CHECK(paths.size() == 720);
        const auto again = vertex_paths(pair, 720, 0);
        CHECK(paths[500].waypoint_indices == again[500].waypoint_indices);
    }
    SUBCASE("m <= 1 is a caller error") {
        pair.beta_index = 1;
        pair.differing = {0};
        CHECK_THROWS_AS(vertex_paths(pair, 720, 0), InputError);
    }
}

TEST_CASE("upper bound collapses to k_l when the bounds are exact") {
    // p(s, q) = 1 + q1 + q2 + s on [-1,1]^2 about 0: everything happens on
    // the real axis and the entry passes through a vertex image.
    const auto poly = UncertainPolynomial::from_monomials(
        1, 2,
        {{MonomialTerm{1.0, {0u, 0u}}, MonomialTerm{1.0, {1u, 0u}}, MonomialTerm{1.0, {0u, 1u}}},
         {MonomialTerm{1.0, {0u, 0u}}}});
    const ParameterBox box({-1.0, -1.0}, {1.0, 1.0});
    const FrequencyBounds fb =
        compute_frequency_bounds(poly, Complex{0.0, 0.0}, box, box.nominal(), kCfg);
    REQUIRE(fb.status == LowerBoundStatus::Entered);
    CHECK(fb.k_l == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(fb.k_u == fb.k_l);  // identical value, not merely close
    CHECK(fb.exact);
}

TEST_CASE("four-state plant at its critical frequency") {
    const auto poly = four_state_polynomial();
    const auto box = four_state_box();
    const Complex z{0.0, 9.16};

    const FrequencyBounds fb = compute_frequency_bounds(poly, z, box, box.nominal(), kCfg);
    REQUIRE(fb.status == LowerBoundStatus::Entered);
    REQUIRE(fb.pair);
    CHECK(fb.pair->m() == 1);  // exact at the root box here
    CHECK(fb.k_l == fb.k_u);

    const double km = oracle::oracle_k_m(poly, z, box, box.nominal(), {});
    CHECK(fb.k_l <= km + 1e-3);
    CHECK(km <= fb.k_u + 1e-3);
    CHECK(std::abs(fb.k_l - km) / km < 0.05);
    CHECK(fb.k_l == doctest::Approx(2.0443).epsilon(2e-4));
}

TEST_CASE("four-state plant at a frequency whose value set never reaches the origin") {
    // The convex-hull relaxation still enters (m = 2), but no vertex path can
    // intercept and the brute-force scan agrees there is no zero.
    const auto poly = four_state_polynomial();
    const auto box = four_state_box();
    const Complex z{0.0, 9.78};

    const FrequencyBounds fb = compute_frequency_bounds(poly, z, box, box.nominal(), kCfg);
    REQUIRE(fb.status == LowerBoundStatus::Entered);
    REQUIRE(fb.pair);
    CHECK(fb.pair->m() == 2);
    CHECK(fb.k_l == doctest::Approx(4.7305).epsilon(1e-3));
    CHECK(fb.k_u_capped);

    const double km = oracle::oracle_k_m(poly, z, box, box.nominal(), {});
    CHECK(std::isinf(km));
}

TEST_CASE("sandwich and monotonicity on random two-parameter families") {
    SplitMix64 rng(41);
    const double deltas[] = {0.4, 0.9, 1.7, 2.9};
    int finite_cases = 0;
    for (int t = 0; t < 12; ++t) {
        const TestInstance inst = random_multilinear(rng, 2, 3);
        for (const double d : deltas) {
            const Complex z{0.0, d};
            const FrequencyBounds fb =
                compute_frequency_bounds(inst.poly, z, inst.box, inst.box.nominal(), kCfg);
            if (fb.status != LowerBoundStatus::Entered) continue;

            CHECK(fb.k_l <= fb.k_u);
            if (fb.k_l > 0.9 * oracle::KmOracleConfig{}.k_max) continue;
            ++finite_cases;

            const double km =
                oracle::oracle_k_m(inst.poly, z, inst.box, inst.box.nominal(), {});
            const double slack = oracle::oracle_k_m_resolution() + 1e-3 * fb.k_l;
            CHECK(fb.k_l <= km + slack);
            if (std::isfinite(km)) CHECK(km <= fb.k_u + 1e-3 * km + slack);

            // Shrinking the box cannot lower the entry point.
            Vec lo = inst.box.lower(), hi = inst.box.upper();
            for (std::size_t i = 0; i < lo.size(); ++i) {
                lo[i] = inst.box.nominal()[i] + 0.6 * (lo[i] - inst.box.nominal()[i]);
                hi[i] = inst.box.nominal()[i] + 0.6 * (hi[i] - inst.box.nominal()[i]);
            }
            const ParameterBox shrunk(lo, hi, inst.box.nominal());
            const FrequencyBounds inner =
                compute_frequency_bounds(inst.poly, z, shrunk, inst.box.nominal(), kCfg);
            CHECK(inner.k_l >= fb.k_l - 1e-6 * fb.k_l);
        }
    }
    CHECK(finite_cases >= 8);
}

TEST_CASE("edge images of a multilinear family are straight segments") {
    SplitMix64 rng(43);
    for (int t = 0; t < 5; ++t) {
        const TestInstance inst = random_multilinear(rng, 3, 3);
        const Complex z{rng.uniform(-2.0, 2.0), rng.uniform(0.5, 3.0)};
        // Vary one coordinate along a box edge, others pinned.
        Vec a(3), b(3);
        for (std::size_t i = 0; i < 3; ++i)
            a[i] = b[i] = rng.uniform(inst.box.lower()[i], inst.box.upper()[i]);
        a[1] = inst.box.lower()[1];
        b[1] = inst.box.upper()[1];
        const Complex wa = inst.poly.eval(z, a);
        const Complex wb = inst.poly.eval(z, b);
        const double scale = std::max({std::abs(wa), std::abs(wb), 1e-30});
        for (int s = 1; s < 10; ++s) {
            Vec q = a;
            q[1] = a[1] + (b[1] - a[1]) * s / 10.0;
            const Complex w = inst.poly.eval(z, q);
            const Complex u = wb - wa;
            const Complex v = w - wa;
            const double cross = u.real() * v.imag() - u.imag() * v.real();
            CHECK(std::abs(cross) <= 1e-9 * scale * scale);
        }
    }
}
