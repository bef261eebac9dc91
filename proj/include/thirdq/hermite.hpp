#ifndef THIRDQ_HERMITE_HPP
#define THIRDQ_HERMITE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "thirdq/errors.hpp"
#include "thirdq/grid.hpp"

namespace thirdq {

/// Harmonic-oscillator energy eigenfunction phi_n(x) in the unit-frequency,
/// dimensionless-quadrature convention (hbar = omega = 1, mass absorbed).
///
/// Evaluated with the normalized three-term recurrence
///   phi_{n+1} = x sqrt(2/(n+1)) phi_n - sqrt(n/(n+1)) phi_{n-1},
/// which carries the Gaussian weight along and never forms a raw Hermite
/// polynomial, so there is no factorial overflow for large n.
inline double eval_eigenfunction(int n, double x) {
    if (n < 0) throw std::domain_error("eval_eigenfunction: level index must be >= 0");
    if (!std::isfinite(x)) throw std::domain_error("eval_eigenfunction: x must be finite");
    const double pi_quarter = 0.75112554446494248286;  // pi^(-1/4)
    double prev = 0.0;
    double cur = pi_quarter * std::exp(-0.5 * x * x);
    for (int m = 0; m < n; ++m) {
        const double next =
            x * std::sqrt(2.0 / (m + 1)) * cur - std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Matrix element <n'| x |n> of the quadrature operator between oscillator
/// eigenstates: (1/sqrt(2)) (sqrt(n) delta_{n',n-1} + sqrt(n+1) delta_{n',n+1}).
inline double x_matrix_element(int n_prime, int n) {
    if (n_prime < 0 || n < 0) throw std::domain_error("x_matrix_element: level index must be >= 0");
    const double inv_sqrt2 = 0.70710678118654752440;
    if (n_prime == n - 1) return inv_sqrt2 * std::sqrt(static_cast<double>(n));
    if (n_prime == n + 1) return inv_sqrt2 * std::sqrt(static_cast<double>(n + 1));
    return 0.0;
}

/// Tabulated eigenfunctions phi_0..phi_{n_max} sampled on a quadrature grid.
struct HermiteBasis {
    int n_max = 16;
    QuadGrid grid;
    std::vector<std::vector<double>> phi_table;  // [n_max+1][n_points]

    double phi(int n, int i) const { return phi_table[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]; }

    double x_element(int n_prime, int n) const {
        if (n_prime > n_max || n > n_max)
            throw std::domain_error("x_element: level index exceeds n_max");
        return x_matrix_element(n_prime, n);
    }
};

/// Builds the phi table, enforcing the grid coverage rule: the grid must span
/// at least [-(sqrt(2 n_max)+3), +(sqrt(2 n_max)+3)] so that phi_{n_max} is
/// negligible at the boundary.
inline HermiteBasis build_phi_table(int n_max, const QuadGrid& grid) {
    if (n_max < 0) throw config_error("build_phi_table: n_max must be >= 0");
    grid.validate();
    if (!grid.covers(n_max))
        throw config_error("build_phi_table: grid [" + std::to_string(grid.x_min) + ", " +
                           std::to_string(grid.x_max) + "] does not cover +/-" +
                           std::to_string(QuadGrid::required_halfspan(n_max)) +
                           " required for n_max = " + std::to_string(n_max));
    HermiteBasis basis;
    basis.n_max = n_max;
    basis.grid = grid;
    basis.phi_table.assign(static_cast<std::size_t>(n_max) + 1,
                           std::vector<double>(static_cast<std::size_t>(grid.n_points)));
    // One recurrence sweep per grid point fills the whole column.
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.point(i);
        const double pi_quarter = 0.75112554446494248286;
        double prev = 0.0;
        double cur = pi_quarter * std::exp(-0.5 * x * x);
        basis.phi_table[0][static_cast<std::size_t>(i)] = cur;
        for (int m = 0; m < n_max; ++m) {
            const double next = x * std::sqrt(2.0 / (m + 1)) * cur -
                                std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
            prev = cur;
            cur = next;
            basis.phi_table[static_cast<std::size_t>(m) + 1][static_cast<std::size_t>(i)] = cur;
        }
    }
    return basis;
}

} // namespace thirdq

#endif
