#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "dstab/parameter_box.hpp"
#include "dstab/types.hpp"

namespace dstab {

struct MonomialTerm {
    double coeff = 0.0;
    std::vector<unsigned> exponents;  // one entry per parameter
};

struct RealMatrix {
    std::size_t n = 0;
    std::vector<double> v;  // row-major

    RealMatrix() = default;
    explicit RealMatrix(std::size_t size) : n(size), v(size * size, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return v[r * n + c]; }
    double at(std::size_t r, std::size_t c) const { return v[r * n + c]; }
};

/// Family of polynomials p(s, q) of fixed degree n over an l-dimensional
/// real parameter vector q. Two backends:
///   - monomial: a_i(q) given as explicit monomial sums, evaluated Horner-style in s;
///   - state space: p(s, q) = det(sI - (A0 + sum_i q_i A_i)), monic by construction.
class UncertainPolynomial {
public:
    static UncertainPolynomial from_monomials(unsigned degree, std::size_t parameter_count,
                                              std::vector<std::vector<MonomialTerm>> coefficients);
    static UncertainPolynomial from_state_space(RealMatrix a0, std::vector<RealMatrix> a);

    unsigned degree() const { return degree_; }
    std::size_t parameter_count() const { return parameter_count_; }
    bool is_state_space() const;

    Complex eval(Complex z, std::span<const double> q) const;

    /// Coefficients a_0(q)..a_n(q), ascending powers of s. For the state-space
    /// backend these are the characteristic polynomial coefficients (leading 1).
    Vec coefficients_at(std::span<const double> q) const;

private:
    struct Monomials {
        std::vector<std::vector<MonomialTerm>> coefficients;
    };
    struct StateSpace {
        RealMatrix a0;
        std::vector<RealMatrix> a;
    };

    UncertainPolynomial() = default;

    unsigned degree_ = 0;
    std::size_t parameter_count_ = 0;
    std::variant<Monomials, StateSpace> backend_;
};

/// The 2^l hypercube vertices of a box and their images under p(z, .),
/// in matching binary-counting order.
struct VertexImages {
    std::vector<Vec> vertices;
    std::vector<Complex> images;
};

VertexImages value_set_vertex_images(const UncertainPolynomial& poly, Complex z,
                                     const ParameterBox& box);

/// Probabilistic check that every coefficient is affine in each single
/// coordinate: second differences along each coordinate must vanish at a few
/// probe frequencies and random fixings of the other coordinates.
bool verify_multilinearity(const UncertainPolynomial& poly, const ParameterBox& box, double tol,
                           unsigned seed = 0);

}  // namespace dstab
