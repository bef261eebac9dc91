#ifndef THIRDQ_GRID_HPP
#define THIRDQ_GRID_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "thirdq/errors.hpp"

namespace thirdq {

/// Uniform grid over the dimensionless quadrature coordinate x.
///
/// The defaults resolve every eigenfunction up to n = 16 with boundary
/// values below 1e-6 (the coverage rule enforced by build_phi_table).
struct QuadGrid {
    double x_min = -9.0;
    double x_max = 9.0;
    int n_points = 361;

    void validate() const {
        if (!(x_min < x_max))
            throw config_error("QuadGrid: x_min must be < x_max");
        if (n_points < 3)
            throw config_error("QuadGrid: n_points must be >= 3");
        if (!std::isfinite(x_min) || !std::isfinite(x_max))
            throw config_error("QuadGrid: bounds must be finite");
    }

    double spacing() const { return (x_max - x_min) / (n_points - 1); }

    double point(int i) const { return x_min + spacing() * i; }

    std::vector<double> points() const {
        std::vector<double> xs(static_cast<std::size_t>(n_points));
        for (int i = 0; i < n_points; ++i) xs[static_cast<std::size_t>(i)] = point(i);
        return xs;
    }

    bool contains(double x) const { return x >= x_min && x <= x_max; }

    /// Minimum half-span needed so that phi_{n_max} is negligible at the boundary.
    static double required_halfspan(int n_max) { return std::sqrt(2.0 * n_max) + 3.0; }

    bool covers(int n_max) const {
        const double r = required_halfspan(n_max);
        return x_min <= -r && x_max >= r;
    }
};

/// Trapezoid quadrature of sampled values over a uniform grid.
template <typename T>
T trapezoid(const std::vector<T>& values, const QuadGrid& grid) {
    if (values.size() != static_cast<std::size_t>(grid.n_points))
        throw std::domain_error("trapezoid: value count does not match grid");
    T sum = T(0.5) * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
    return sum * static_cast<T>(grid.spacing());
}

} // namespace thirdq

#endif
