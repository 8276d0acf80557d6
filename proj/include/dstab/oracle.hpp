#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dstab/parameter_box.hpp"
#include "dstab/polynomial.hpp"
#include "dstab/types.hpp"

namespace dstab::oracle {

/// Brute-force verifiers. They share only the polynomial evaluator with the
/// solver; inclusion decisions are made by winding numbers and dense grids,
/// never by the hull/bounds path they are used to check.

struct WindingResult {
    int winding = 0;
    double min_abs_on_grid = kInf;
};

struct WindingConfig {
    int edge_samples = 64;  ///< per box edge
    int grid_n = 128;       ///< interior grid is grid_n x grid_n
};

/// Winding number of the image of the box's edge cycle about the origin,
/// plus the minimum |p| over an interior grid (the fallback detector for
/// folded images whose winding cancels). Two parameters only.
WindingResult winding_inclusion(const UncertainPolynomial& poly, Complex z,
                                const ParameterBox& box, const WindingConfig& cfg = {});

/// Laplace cofactor expansion, exact recursion; n <= 6.
Complex cofactor_det(const std::vector<Complex>& m, std::size_t n);

struct KmOracleConfig {
    double k_max = 16.0;        ///< scan ceiling
    int coarse_steps = 320;     ///< first pass resolution over [0, k_max]
    int refine_levels = 4;      ///< each level splits the bracketing step by 10
    double include_tol = 1e-7;  ///< relative |p| threshold that counts as a hit
    WindingConfig winding{64, 24};  ///< cheaper interior grid; the zoom recovers depth
};

/// First k on a (coarse-to-fine) scan at which the scaled box's value set
/// contains the origin: winding nonzero, or the dense-grid minimum of |p|
/// within tolerance. The scan is refined around the first hit, so the result
/// carries the finest level's step as its resolution. Returns +inf when the
/// whole scan stays clear. One to three parameters.
double oracle_k_m(const UncertainPolynomial& poly, Complex z, const ParameterBox& box,
                  std::span<const double> scale_center, const KmOracleConfig& cfg = {});

/// Resolution of the refined scan: the step below which oracle_k_m cannot
/// distinguish first-entry points.
double oracle_k_m_resolution(const KmOracleConfig& cfg = {});

}  // namespace dstab::oracle
