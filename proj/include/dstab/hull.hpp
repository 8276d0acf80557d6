#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dstab/types.hpp"

namespace dstab {

/// Planar convex hull, counterclockwise, strictly convex (no three
/// consecutive collinear points). May degenerate to a segment or a point.
/// source_indices[k] is the index of points[k] in the construction input,
/// so hull points map back to hypercube vertices.
struct Hull {
    std::vector<Complex> points;
    std::vector<std::size_t> source_indices;

    std::size_t size() const { return points.size(); }
};

/// Andrew monotone chain. Coincident input points are merged, keeping the
/// smallest source index. The chain starts at the lexicographic minimum
/// (by real part, then imaginary part), so equal point sets produce equal
/// hulls regardless of input order.
Hull convex_hull(std::span<const Complex> points);

enum class OriginLocation { Inside, OnBoundary, Outside };

struct OriginClassification {
    OriginLocation location = OriginLocation::Outside;
    std::size_t edge = 0;  // nearest edge; meaningful for OnBoundary
};

/// Orientation-test classification with a relative tolerance: tolerances are
/// scaled by the largest point magnitude of the hull.
OriginClassification classify_origin(const Hull& hull, double tol);

/// Distance from the origin to the segment [a, b].
double segment_origin_distance(Complex a, Complex b);

/// True iff the origin lies within tol * max(|a|, |b|, 1) of the segment.
bool segment_contains_origin(Complex a, Complex b, double tol);

/// Signed clearance of the origin from the hull boundary: positive outside,
/// negative inside (penetration depth), zero on the boundary. Degenerate
/// hulls have no interior, so their clearance is never negative.
double hull_origin_clearance(const Hull& hull);

/// Largest point magnitude, used as the scale for relative tolerances.
double hull_scale(const Hull& hull);

}  // namespace dstab
