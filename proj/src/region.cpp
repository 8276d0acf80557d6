#include "dstab/region.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace dstab {

BoundaryPiece::BoundaryPiece(std::variant<HalfPlane, Disk> shape, double dl, double du)
    : shape_(shape), delta_lower_(dl), delta_upper_(du) {
    if (!(dl < du)) throw InputError("sweep interval must satisfy delta_lower < delta_upper");
}

BoundaryPiece BoundaryPiece::half_plane(double sigma, double delta_lower, double delta_upper) {
    return BoundaryPiece(HalfPlane{sigma}, delta_lower, delta_upper);
}

BoundaryPiece BoundaryPiece::disk(Complex center, double radius, double delta_lower,
                                  double delta_upper) {
    if (!(radius > 0.0)) throw InputError("disk radius must be positive");
    return BoundaryPiece(Disk{center, radius}, delta_lower, delta_upper);
}

Complex BoundaryPiece::sweep_point(double delta) const {
    if (delta < delta_lower_ || delta > delta_upper_)
        throw DomainError("generalized frequency " + std::to_string(delta) +
                          " outside the sweep interval");
    if (const auto* hp = std::get_if<HalfPlane>(&shape_)) return Complex{hp->sigma, delta};
    const auto& d = std::get<Disk>(shape_);
    return d.center + d.radius * Complex{std::cos(delta), std::sin(delta)};
}

bool BoundaryPiece::contains(Complex z) const {
    if (const auto* hp = std::get_if<HalfPlane>(&shape_)) return z.real() < hp->sigma;
    const auto& d = std::get<Disk>(shape_);
    return std::abs(z - d.center) < d.radius;
}

BoundaryPiece BoundaryPiece::with_interval(double delta_lower, double delta_upper) const {
    return BoundaryPiece(shape_, delta_lower, delta_upper);
}

double BoundaryPiece::sigma() const { return std::get<HalfPlane>(shape_).sigma; }
Complex BoundaryPiece::disk_center() const { return std::get<Disk>(shape_).center; }
double BoundaryPiece::disk_radius() const { return std::get<Disk>(shape_).radius; }

bool DRegion::contains(Complex z) const {
    return std::any_of(pieces.begin(), pieces.end(),
                       [z](const BoundaryPiece& p) { return p.contains(z); });
}

const GridPoint& FrequencyGrid::at(std::size_t piece, int i, int j) const {
    for (const auto& g : points)
        if (g.piece == piece && g.i == i && g.j == j) return g;
    throw InputError("grid point not found");
}

FrequencyGrid make_grid(const BoundaryPiece& piece, std::size_t piece_index, int n_r, int n_c) {
    if (n_r < 2) throw InputError("grid needs n_r >= 2");
    if (n_c < 1) throw InputError("grid needs n_c >= 1");

    const double dl = piece.delta_lower();
    const double span = piece.delta_upper() - dl;
    FrequencyGrid grid;
    grid.n_r = n_r;
    grid.n_c = n_c;
    grid.points.reserve(static_cast<std::size_t>(n_r) * static_cast<std::size_t>(n_c));
    for (int i = 1; i <= n_r; ++i)
        for (int j = 1; j <= n_c; ++j) {
            const double delta =
                dl + span * (i - 1) / n_r + span * (j - 1) / (static_cast<double>(n_r) * n_c);
            grid.points.push_back(GridPoint{piece_index, i, j, delta});
        }
    return grid;
}

FrequencyGrid make_grid(const DRegion& region, int n_r, int n_c) {
    if (region.pieces.empty()) throw InputError("region has no pieces");
    FrequencyGrid grid;
    grid.n_r = n_r;
    grid.n_c = n_c;
    for (std::size_t p = 0; p < region.pieces.size(); ++p) {
        FrequencyGrid g = make_grid(region.pieces[p], p, n_r, n_c);
        grid.points.insert(grid.points.end(), g.points.begin(), g.points.end());
    }
    return grid;
}

std::vector<Complex> nominal_roots(const UncertainPolynomial& poly, std::span<const double> q0) {
    if (poly.degree() < 1) throw InputError("root computation needs degree >= 1");
    const Vec coeff = poly.coefficients_at(q0);
    const std::size_t n = poly.degree();

    double max_mag = 0.0;
    for (double c : coeff) max_mag = std::max(max_mag, std::abs(c));
    if (std::abs(coeff[n]) < 1e-12 * max_mag)
        throw DomainError("leading coefficient vanishes at the nominal point (degree drop)");

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 1; r < n; ++r) companion(r, r - 1) = 1.0;
    for (std::size_t r = 0; r < n; ++r) companion(r, n - 1) = -coeff[r] / coeff[n];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw InternalError("companion matrix eigenvalue iteration failed");

    std::vector<Complex> roots(n);
    for (std::size_t r = 0; r < n; ++r)
        roots[r] = Complex{solver.eigenvalues()[r].real(), solver.eigenvalues()[r].imag()};
    return roots;
}

bool nominal_roots_in_region(const UncertainPolynomial& poly, const DRegion& region,
                             std::span<const double> q0) {
    const auto roots = nominal_roots(poly, q0);
    return std::all_of(roots.begin(), roots.end(),
                       [&](Complex r) { return region.contains(r); });
}

}  // namespace dstab
