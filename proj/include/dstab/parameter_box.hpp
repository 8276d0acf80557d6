#pragma once

#include <cstddef>
#include <span>

#include "dstab/types.hpp"

namespace dstab {

/// Axis-aligned hyperrectangle of uncertain parameters with a nominal point.
///
/// The box is immutable after construction. Scaling about a center c maps
/// q to c + k*(q - c) coordinate-wise; with k >= 0 this keeps the box
/// axis-aligned and preserves the vertex order.
class ParameterBox {
public:
    static constexpr std::size_t max_dimension = 20;

    /// Nominal defaults to the box center.
    ParameterBox(Vec lower, Vec upper);
    ParameterBox(Vec lower, Vec upper, Vec nominal);

    std::size_t dimension() const { return lower_.size(); }
    const Vec& lower() const { return lower_; }
    const Vec& upper() const { return upper_; }
    const Vec& nominal() const { return nominal_; }

    double width(std::size_t i) const { return upper_[i] - lower_[i]; }
    Vec center() const;

    /// Euclidean length of the main diagonal.
    double diameter() const;

    std::size_t vertex_count() const { return std::size_t{1} << dimension(); }

    /// Corner point in binary-counting order: bit i of `index` selects the
    /// upper end of coordinate i.
    Vec vertex(std::size_t index) const;
    std::vector<Vec> vertices() const;

    /// kQ about the box's own nominal point.
    ParameterBox scaled(double k) const;

    /// kQ about an arbitrary center (used when a subdomain must be scaled
    /// about the root box's nominal, which may lie outside the subdomain).
    ParameterBox scaled_about(double k, std::span<const double> center) const;

    bool contains(std::span<const double> q) const;

private:
    Vec lower_;
    Vec upper_;
    Vec nominal_;
};

}  // namespace dstab
