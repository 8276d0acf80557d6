#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "dstab/polynomial.hpp"
#include "dstab/types.hpp"

namespace dstab {

/// One piece of the root region: an open set with a boundary sweeping
/// function Phi mapping a generalized-frequency interval onto its boundary.
///   - half plane Re(z) < sigma, swept by Phi(d) = sigma + i*d
///   - open disk |z - center| < radius, swept by Phi(d) = center + radius*e^{i*d}
class BoundaryPiece {
public:
    static BoundaryPiece half_plane(double sigma, double delta_lower, double delta_upper);
    static BoundaryPiece disk(Complex center, double radius, double delta_lower,
                              double delta_upper);

    /// Boundary point Phi(delta); delta must lie in [delta_lower, delta_upper].
    Complex sweep_point(double delta) const;

    /// Open-set membership, strict inequalities, no tolerance.
    bool contains(Complex z) const;

    double delta_lower() const { return delta_lower_; }
    double delta_upper() const { return delta_upper_; }

    /// Returns a copy with a different sweep interval.
    BoundaryPiece with_interval(double delta_lower, double delta_upper) const;

    bool is_half_plane() const { return std::holds_alternative<HalfPlane>(shape_); }
    bool is_disk() const { return std::holds_alternative<Disk>(shape_); }
    double sigma() const;
    Complex disk_center() const;
    double disk_radius() const;

private:
    struct HalfPlane {
        double sigma;
    };
    struct Disk {
        Complex center;
        double radius;
    };

    BoundaryPiece(std::variant<HalfPlane, Disk> shape, double dl, double du);

    std::variant<HalfPlane, Disk> shape_;
    double delta_lower_;
    double delta_upper_;
};

/// Root region as a union of pieces. Disjointness is the caller's contract
/// and is not verified geometrically.
struct DRegion {
    std::vector<BoundaryPiece> pieces;

    bool contains(Complex z) const;
};

struct GridPoint {
    std::size_t piece = 0;
    int i = 1;  // branch index, 1..n_r
    int j = 1;  // sweep step, 1..n_c
    double delta = 0.0;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Frequencies delta_ij = dl + (du-dl)*(i-1)/n_r + (du-dl)*(j-1)/(n_r*n_c),
/// the base grid dl + (du-dl)*(k-1)/(n_r*n_c) regrouped into n_r interleaved
/// branches that each step by (du-dl)/(n_r*n_c).
struct FrequencyGrid {
    int n_r = 0;
    int n_c = 0;
    std::vector<GridPoint> points;  // ordered by (piece, i, j)

    const GridPoint& at(std::size_t piece, int i, int j) const;
};

FrequencyGrid make_grid(const BoundaryPiece& piece, std::size_t piece_index, int n_r, int n_c);
FrequencyGrid make_grid(const DRegion& region, int n_r, int n_c);

/// All n roots of p(s, q0), computed as eigenvalues of the companion matrix
/// of the monic normalization. Throws DomainError if the leading coefficient
/// has effectively vanished at q0 (degree drop).
std::vector<Complex> nominal_roots(const UncertainPolynomial& poly, std::span<const double> q0);

/// True iff every root of p(s, q0) lies in some piece's open region.
bool nominal_roots_in_region(const UncertainPolynomial& poly, const DRegion& region,
                             std::span<const double> q0);

}  // namespace dstab
