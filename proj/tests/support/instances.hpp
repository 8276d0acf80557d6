#pragma once

// Seeded generators for multilinear test families.

#include <cmath>
#include <cstdint>
#include <vector>

#include "dstab/parameter_box.hpp"
#include "dstab/polynomial.hpp"
#include "dstab/types.hpp"

namespace dstab::testsupport {

struct TestInstance {
    UncertainPolynomial poly;
    ParameterBox box;
};

/// Random monic family with fully multilinear coefficients: every coefficient
/// below the leading one is a sum over all subsets of the parameters.
inline TestInstance random_multilinear(SplitMix64& rng, std::size_t parameter_count,
                                       unsigned degree) {
    std::vector<std::vector<MonomialTerm>> coeff(degree + 1);
    const std::size_t subsets = std::size_t{1} << parameter_count;
    for (unsigned pw = 0; pw < degree; ++pw) {
        for (std::size_t mask = 0; mask < subsets; ++mask) {
            MonomialTerm t;
            t.coeff = rng.uniform(-2.0, 2.0);
            t.exponents.resize(parameter_count);
            for (std::size_t b = 0; b < parameter_count; ++b)
                t.exponents[b] = (mask >> b) & 1u;
            coeff[pw].push_back(std::move(t));
        }
    }
    MonomialTerm lead;
    lead.coeff = 1.0;
    lead.exponents.assign(parameter_count, 0u);
    coeff[degree].push_back(std::move(lead));

    Vec lower(parameter_count), upper(parameter_count);
    for (std::size_t i = 0; i < parameter_count; ++i) {
        lower[i] = -rng.uniform(0.5, 1.5);
        upper[i] = rng.uniform(0.5, 1.5);
    }
    return TestInstance{
        UncertainPolynomial::from_monomials(degree, parameter_count, std::move(coeff)),
        ParameterBox(std::move(lower), std::move(upper))};
}

/// One-parameter family built so that the margin at omega0 is known exactly:
/// p(s, q) = base(s) + q * h(s) with stable base, h chosen so that
/// p(j*omega0, q_star) = 0. Scaling the box [-width, width] about q0 = 0
/// first reaches that zero at k = q_star / width; every other frequency is
/// generically unconstraining.
struct LineInstance {
    UncertainPolynomial poly;
    ParameterBox box;
    double omega0 = 0.0;
    double exact_k = 0.0;
};

inline LineInstance designed_line_instance(SplitMix64& rng) {
    const double omega0 = rng.uniform(0.6, 4.0);
    const double width = rng.uniform(0.5, 2.0);
    const double q_star = width * rng.uniform(0.3, 2.5);

    // base(s) = (s + r1)(s + r2)(s^2 + 2a s + a^2 + b^2), all roots in Re < 0.
    const double r1 = rng.uniform(0.4, 2.5);
    const double r2 = rng.uniform(0.4, 2.5);
    const double a = rng.uniform(0.3, 1.5);
    const double b = rng.uniform(0.5, 3.0);

    Vec base = {1.0};
    auto mul_linear = [&](double c0) {  // multiply by (s + c0)
        Vec out(base.size() + 1, 0.0);
        for (std::size_t i = 0; i < base.size(); ++i) {
            out[i + 1] += base[i];
            out[i] += c0 * base[i];
        }
        base = out;
    };
    mul_linear(r1);
    mul_linear(r2);
    {
        // multiply by s^2 + 2a s + (a^2 + b^2)
        Vec out(base.size() + 2, 0.0);
        for (std::size_t i = 0; i < base.size(); ++i) {
            out[i + 2] += base[i];
            out[i + 1] += 2.0 * a * base[i];
            out[i] += (a * a + b * b) * base[i];
        }
        base = out;
    }
    // base is ascending, degree 4, leading 1.

    Complex base_at{0.0, 0.0};
    const Complex jw{0.0, omega0};
    for (std::size_t i = base.size(); i-- > 0;) base_at = base_at * jw + base[i];

    // h(s) = alpha + beta s with h(j*omega0) = -base(j*omega0) / q_star.
    const Complex target = -base_at / q_star;
    const double alpha = target.real();
    const double beta = target.imag() / omega0;

    std::vector<std::vector<MonomialTerm>> coeff(base.size());
    for (std::size_t pw = 0; pw < base.size(); ++pw) {
        coeff[pw].push_back(MonomialTerm{base[pw], {0u}});
        if (pw == 0) coeff[pw].push_back(MonomialTerm{alpha, {1u}});
        if (pw == 1) coeff[pw].push_back(MonomialTerm{beta, {1u}});
    }

    return LineInstance{
        UncertainPolynomial::from_monomials(static_cast<unsigned>(base.size() - 1), 1,
                                            std::move(coeff)),
        ParameterBox({-width}, {width}), omega0, q_star / width};
}

}  // namespace dstab::testsupport
