#include "dstab/parameter_box.hpp"

#include <cmath>
#include <string>

namespace dstab {

namespace {

Vec midpoint(const Vec& lo, const Vec& hi) {
    Vec c(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
}

}  // namespace

ParameterBox::ParameterBox(Vec lower, Vec upper)
    : ParameterBox(lower, upper, midpoint(lower, upper)) {}

ParameterBox::ParameterBox(Vec lower, Vec upper, Vec nominal)
    : lower_(std::move(lower)), upper_(std::move(upper)), nominal_(std::move(nominal)) {
    const std::size_t l = lower_.size();
    if (l == 0) throw InputError("parameter box must have at least one coordinate");
    if (l > max_dimension)
        throw CapacityError("parameter box has " + std::to_string(l) +
                            " coordinates; the vertex enumeration cap is " +
                            std::to_string(max_dimension));
    if (upper_.size() != l || nominal_.size() != l)
        throw InputError("parameter box bound/nominal lengths disagree");
    for (std::size_t i = 0; i < l; ++i) {
        if (!(lower_[i] <= upper_[i]))
            throw InputError("parameter box bound " + std::to_string(i) + " is inverted");
        if (!(lower_[i] <= nominal_[i] && nominal_[i] <= upper_[i]))
            throw InputError("nominal point leaves the box in coordinate " + std::to_string(i));
    }
}

Vec ParameterBox::center() const { return midpoint(lower_, upper_); }

double ParameterBox::diameter() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dimension(); ++i) s += width(i) * width(i);
    return std::sqrt(s);
}

Vec ParameterBox::vertex(std::size_t index) const {
    Vec v(dimension());
    for (std::size_t i = 0; i < dimension(); ++i)
        v[i] = (index >> i) & 1u ? upper_[i] : lower_[i];
    return v;
}

std::vector<Vec> ParameterBox::vertices() const {
    std::vector<Vec> out;
    out.reserve(vertex_count());
    for (std::size_t j = 0; j < vertex_count(); ++j) out.push_back(vertex(j));
    return out;
}

ParameterBox ParameterBox::scaled(double k) const { return scaled_about(k, nominal_); }

ParameterBox ParameterBox::scaled_about(double k, std::span<const double> center) const {
    if (!(k >= 0.0)) throw InputError("scale factor must be nonnegative");
    if (center.size() != dimension()) throw InputError("scale center has wrong length");
    Vec lo(dimension()), hi(dimension()), nom(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
        lo[i] = center[i] + k * (lower_[i] - center[i]);
        hi[i] = center[i] + k * (upper_[i] - center[i]);
        nom[i] = center[i] + k * (nominal_[i] - center[i]);
    }
    return ParameterBox(std::move(lo), std::move(hi), std::move(nom));
}

bool ParameterBox::contains(std::span<const double> q) const {
    if (q.size() != dimension()) return false;
    for (std::size_t i = 0; i < dimension(); ++i)
        if (q[i] < lower_[i] || q[i] > upper_[i]) return false;
    return true;
}

}  // namespace dstab
