#include "dstab/polynomial.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace dstab {

namespace {

// Determinant by in-place Gaussian elimination with partial pivoting.
Complex det_partial_pivot(std::vector<Complex>& m, std::size_t n) {
    Complex det{1.0, 0.0};
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(m[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(m[r * n + col]);
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) return Complex{0.0, 0.0};
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(m[pivot * n + c], m[col * n + c]);
            det = -det;
        }
        const Complex d = m[col * n + col];
        det *= d;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = m[r * n + col] / d;
            if (f == Complex{0.0, 0.0}) continue;
            for (std::size_t c = col + 1; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
        }
    }
    return det;
}

double trace(const RealMatrix& m) {
    double t = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) t += m.at(i, i);
    return t;
}

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix out(a.n);
    for (std::size_t r = 0; r < a.n; ++r)
        for (std::size_t k = 0; k < a.n; ++k) {
            const double ark = a.at(r, k);
            if (ark == 0.0) continue;
            for (std::size_t c = 0; c < a.n; ++c) out.at(r, c) += ark * b.at(k, c);
        }
    return out;
}

}  // namespace

UncertainPolynomial UncertainPolynomial::from_monomials(
    unsigned degree, std::size_t parameter_count,
    std::vector<std::vector<MonomialTerm>> coefficients) {
    if (coefficients.size() != static_cast<std::size_t>(degree) + 1)
        throw InputError("expected " + std::to_string(degree + 1) + " coefficient lists, got " +
                         std::to_string(coefficients.size()));
    for (const auto& terms : coefficients)
        for (const auto& t : terms)
            if (t.exponents.size() != parameter_count)
                throw InputError("monomial exponent vector length disagrees with parameter count");

    UncertainPolynomial p;
    p.degree_ = degree;
    p.parameter_count_ = parameter_count;
    p.backend_ = Monomials{std::move(coefficients)};
    return p;
}

UncertainPolynomial UncertainPolynomial::from_state_space(RealMatrix a0,
                                                          std::vector<RealMatrix> a) {
    const std::size_t n = a0.n;
    if (n == 0) throw InputError("state matrix is empty");
    for (const auto& ai : a)
        if (ai.n != n) throw InputError("per-parameter state matrices must all be n x n");

    UncertainPolynomial p;
    p.degree_ = static_cast<unsigned>(n);
    p.parameter_count_ = a.size();
    p.backend_ = StateSpace{std::move(a0), std::move(a)};
    return p;
}

bool UncertainPolynomial::is_state_space() const {
    return std::holds_alternative<StateSpace>(backend_);
}

Complex UncertainPolynomial::eval(Complex z, std::span<const double> q) const {
    if (q.size() != parameter_count_)
        throw InputError("parameter vector length " + std::to_string(q.size()) +
                         " does not match the declared count " + std::to_string(parameter_count_));

    if (const auto* mono = std::get_if<Monomials>(&backend_)) {
        // Horner in s with coefficients evaluated at q.
        Complex acc{0.0, 0.0};
        for (std::size_t pw = mono->coefficients.size(); pw-- > 0;) {
            double coeff = 0.0;
            for (const auto& t : mono->coefficients[pw]) {
                double term = t.coeff;
                for (std::size_t i = 0; i < q.size(); ++i)
                    for (unsigned e = 0; e < t.exponents[i]; ++e) term *= q[i];
                coeff += term;
            }
            acc = acc * z + coeff;
        }
        return acc;
    }

    const auto& ss = std::get<StateSpace>(backend_);
    const std::size_t n = ss.a0.n;
    std::vector<Complex> m(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double a = ss.a0.at(r, c);
            for (std::size_t i = 0; i < q.size(); ++i) a += q[i] * ss.a[i].at(r, c);
            m[r * n + c] = (r == c ? z : Complex{0.0, 0.0}) - a;
        }
    return det_partial_pivot(m, n);
}

Vec UncertainPolynomial::coefficients_at(std::span<const double> q) const {
    if (q.size() != parameter_count_) throw InputError("parameter vector length mismatch");

    if (const auto* mono = std::get_if<Monomials>(&backend_)) {
        Vec out(degree_ + 1, 0.0);
        for (std::size_t pw = 0; pw <= degree_; ++pw) {
            for (const auto& t : mono->coefficients[pw]) {
                double term = t.coeff;
                for (std::size_t i = 0; i < q.size(); ++i)
                    for (unsigned e = 0; e < t.exponents[i]; ++e) term *= q[i];
                out[pw] += term;
            }
        }
        return out;
    }

    // Faddeev-LeVerrier on A(q): det(sI - A) = s^n + c_{n-1} s^{n-1} + ... + c_0.
    const auto& ss = std::get<StateSpace>(backend_);
    const std::size_t n = ss.a0.n;
    RealMatrix a(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double val = ss.a0.at(r, c);
            for (std::size_t i = 0; i < q.size(); ++i) val += q[i] * ss.a[i].at(r, c);
            a.at(r, c) = val;
        }

    Vec coeff(n + 1, 0.0);
    coeff[n] = 1.0;
    RealMatrix m(n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        RealMatrix am = matmul(a, m);
        for (std::size_t i = 0; i < n; ++i) am.at(i, i) += coeff[n - k + 1];
        m = std::move(am);
        coeff[n - k] = -trace(matmul(a, m)) / static_cast<double>(k);
    }
    return coeff;
}

VertexImages value_set_vertex_images(const UncertainPolynomial& poly, Complex z,
                                     const ParameterBox& box) {
    if (poly.parameter_count() != box.dimension())
        throw InputError("polynomial and box parameter counts disagree");
    VertexImages out;
    out.vertices = box.vertices();
    out.images.reserve(out.vertices.size());
    for (const auto& v : out.vertices) out.images.push_back(poly.eval(z, v));
    return out;
}

bool verify_multilinearity(const UncertainPolynomial& poly, const ParameterBox& box, double tol,
                           unsigned seed) {
    if (!(tol > 0.0)) throw InputError("multilinearity tolerance must be positive");
    if (poly.parameter_count() != box.dimension())
        throw InputError("polynomial and box parameter counts disagree");

    static constexpr int kFixings = 5;
    const Complex probes[] = {{0.0, 0.9}, {0.7, 1.3}, {-0.4, 2.1}};

    SplitMix64 rng(0x6d756c74696c696eull ^ seed);
    const std::size_t l = box.dimension();
    Vec q(l);
    for (const Complex z : probes) {
        for (int f = 0; f < kFixings; ++f) {
            for (std::size_t i = 0; i < l; ++i)
                q[i] = rng.uniform(box.lower()[i], box.upper()[i]);
            for (std::size_t i = 0; i < l; ++i) {
                if (box.width(i) == 0.0) continue;  // affine trivially
                const double keep = q[i];
                q[i] = box.lower()[i];
                const Complex lo = poly.eval(z, q);
                q[i] = 0.5 * (box.lower()[i] + box.upper()[i]);
                const Complex mid = poly.eval(z, q);
                q[i] = box.upper()[i];
                const Complex hi = poly.eval(z, q);
                q[i] = keep;

                const double scale =
                    std::max({std::abs(lo), std::abs(mid), std::abs(hi)});
                const double second = std::abs(lo - 2.0 * mid + hi);
                if (second > tol * scale) return false;
            }
        }
    }
    return true;
}

}  // namespace dstab
