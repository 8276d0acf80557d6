#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dstab/hull.hpp"
#include "dstab/parameter_box.hpp"
#include "dstab/polynomial.hpp"
#include "dstab/types.hpp"

namespace dstab {

struct BoundsConfig {
    double k_tol = 1e-6;     ///< relative width of the final bisection bracket
    double k_cap = 1e4;      ///< scale values beyond this count as "never"
    double k_step = 1e-3;    ///< initial march step; the step doubles each sample
    double geom_tol = 1e-10; ///< relative tolerance of geometric predicates
    int path_cap = 720;      ///< max vertex paths per pair (all m! when m! <= cap)
    unsigned seed = 0;       ///< path sampling past the cap; multilinearity probes
};

/// The two hypercube vertices whose images are the endpoints of the hull edge
/// the origin enters through, and the set of coordinates where they differ.
struct CriticalPair {
    std::size_t alpha_index = 0;  // vertex ids in binary-counting order
    std::size_t beta_index = 0;
    Vec alpha;
    Vec beta;
    std::vector<std::size_t> differing;

    std::size_t m() const { return differing.size(); }
};

/// Chain of m+1 hypercube vertices from alpha to beta; consecutive waypoints
/// differ in exactly one coordinate, so each image segment is a straight line
/// for multilinear families.
struct VertexPath {
    std::vector<std::size_t> waypoint_indices;
};

enum class LowerBoundStatus {
    Entered,         ///< origin enters the vertex-image hull at k
    NoIntersection,  ///< origin stays outside up to k_cap
    ZeroAtNominal,   ///< p(z, q0) is (numerically) zero; the margin here is 0
};

struct LowerBound {
    LowerBoundStatus status = LowerBoundStatus::NoIntersection;
    double k = 0.0;
    Hull hull;  // vertex-image hull at k, valid when status == Entered
};

struct UpperBound {
    double k = 0.0;
    bool intercepted = false;  ///< false: no path interception below k_cap (conservative)
};

/// Smallest k in [0, k_cap] at which the origin first enters the convex hull
/// of the vertex images of the box scaled by k about scale_center. Inclusion
/// need not be monotone in k when scale_center lies outside the box, so the
/// search marches forward with doubling steps to find the first bracketing
/// interval (recovering near-miss dips by golden-section descent), then
/// bisects the bracket to relative width cfg.k_tol.
LowerBound lower_bound(const UncertainPolynomial& poly, Complex z, const ParameterBox& box,
                       std::span<const double> scale_center, const BoundsConfig& cfg);

/// Identifies the hull edge whose segment contains the origin, maps both
/// endpoints back to hypercube vertices and unscales them to `box`. When
/// several edges qualify, picks the pair with the smallest m, then the
/// smallest vertex indices.
CriticalPair critical_vertices(const ParameterBox& box, double k_l, const Hull& hull_at_kl,
                               const BoundsConfig& cfg);

/// All m! coordinate-flip orderings when m! <= cap; otherwise the ascending
/// and descending orderings plus (cap - 2) seeded random ones.
std::vector<VertexPath> vertex_paths(const CriticalPair& pair, int cap, unsigned seed);

/// Smallest k >= k_l at which some vertex path of the scaled box passes
/// within tolerance of the origin. Exact (returns k_l) when m <= 1.
UpperBound upper_bound(const UncertainPolynomial& poly, Complex z, const ParameterBox& box,
                       std::span<const double> scale_center, double k_l, const CriticalPair& pair,
                       const BoundsConfig& cfg);

/// Lower and upper bound for one (frequency, box) work item.
struct FrequencyBounds {
    LowerBoundStatus status = LowerBoundStatus::NoIntersection;
    double k_l = kInf;
    double k_u = kInf;
    bool exact = false;      ///< m <= 1, so k_l == k_u is the margin itself
    bool k_u_capped = false; ///< upper search hit k_cap without interception
    std::optional<CriticalPair> pair;
};

FrequencyBounds compute_frequency_bounds(const UncertainPolynomial& poly, Complex z,
                                         const ParameterBox& box,
                                         std::span<const double> scale_center,
                                         const BoundsConfig& cfg);

}  // namespace dstab
