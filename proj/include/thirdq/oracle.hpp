#ifndef THIRDQ_ORACLE_HPP
#define THIRDQ_ORACLE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "thirdq/basis.hpp"
#include "thirdq/engine.hpp"
#include "thirdq/errors.hpp"
#include "thirdq/grid.hpp"
#include "thirdq/states.hpp"

namespace thirdq {

/// Conventional two-mode Fock-space state |n_j> x |n_k|, n <= n_max per mode.
/// This is the independent cross-validation path: it never touches the
/// operator integrator.
struct FockStateVector {
    int n_max = 16;
    std::vector<cd> amplitudes;  // (n_max+1)^2, row-major with n_j outer

    int levels() const { return n_max + 1; }
    int dim() const { return levels() * levels(); }
    int index(int n_j, int n_k) const { return n_j * levels() + n_k; }

    cd& at(int n_j, int n_k) { return amplitudes[static_cast<std::size_t>(index(n_j, n_k))]; }
    cd at(int n_j, int n_k) const { return amplitudes[static_cast<std::size_t>(index(n_j, n_k))]; }

    double norm2() const {
        double s = 0.0;
        for (const cd& a : amplitudes) s += std::norm(a);
        return s;
    }
};

/// Converts single-mode hyper amplitude lists into the Fock-space product state.
/// The Z slots must be empty; the zero-oscillaton state has no Fock image.
inline FockStateVector fock_product(const AmplitudeList& a_j, const AmplitudeList& a_k) {
    if (a_j.size() != a_k.size() || a_j.size() < 2)
        throw std::domain_error("fock_product: amplitude lists must have equal length >= 2");
    if (std::abs(a_j[ModeBasis::z_slot]) != 0.0 || std::abs(a_k[ModeBasis::z_slot]) != 0.0)
        throw std::domain_error("fock_product: Z-slot amplitude has no Fock-space image");
    FockStateVector psi;
    psi.n_max = static_cast<int>(a_j.size()) - 2;
    psi.amplitudes.assign(static_cast<std::size_t>(psi.dim()), cd(0.0, 0.0));
    for (int nj = 0; nj <= psi.n_max; ++nj)
        for (int nk = 0; nk <= psi.n_max; ++nk)
            psi.at(nj, nk) = a_j[static_cast<std::size_t>(nj) + 1] * a_k[static_cast<std::size_t>(nk) + 1];
    return psi;
}

/// Exact evolution under H = sum_m (n+1/2) w_m a^dag_m a_m + (eps/2)(a^dag_j a_k + a^dag_k a_j)
/// via one eigendecomposition of the truncated Hermitian matrix. No time stepping,
/// so the error budget is independent of the RK4 engine.
class OracleEvolver {
public:
    OracleEvolver(int n_max, double epsilon, double omega_j, double omega_k) : n_max_(n_max) {
        const int levels = n_max + 1;
        const int dim = levels * levels;
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
        auto idx = [levels](int nj, int nk) { return nj * levels + nk; };
        for (int nj = 0; nj < levels; ++nj) {
            for (int nk = 0; nk < levels; ++nk) {
                h(idx(nj, nk), idx(nj, nk)) = (nj + 0.5) * omega_j + (nk + 0.5) * omega_k;
                if (nj + 1 < levels && nk - 1 >= 0) {
                    const double v = 0.5 * epsilon * std::sqrt((nj + 1.0) * nk);
                    h(idx(nj + 1, nk - 1), idx(nj, nk)) += v;
                    h(idx(nj, nk), idx(nj + 1, nk - 1)) += v;
                }
            }
        }
        if (h != h.transpose()) throw numerical_error("OracleEvolver: Hamiltonian assembly is not Hermitian");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        if (es.info() != Eigen::Success) throw numerical_error("OracleEvolver: eigendecomposition failed");
        vectors_ = es.eigenvectors();
        energies_ = es.eigenvalues();
    }

    FockStateVector evolve(const FockStateVector& psi, double t) const {
        if (psi.n_max != n_max_) throw std::domain_error("OracleEvolver: n_max mismatch");
        const int dim = psi.dim();
        Eigen::VectorXd re(dim), im(dim);
        for (int i = 0; i < dim; ++i) {
            re(i) = psi.amplitudes[static_cast<std::size_t>(i)].real();
            im(i) = psi.amplitudes[static_cast<std::size_t>(i)].imag();
        }
        Eigen::VectorXd cre = vectors_.transpose() * re;
        Eigen::VectorXd cim = vectors_.transpose() * im;
        Eigen::VectorXcd coef(dim);
        for (int i = 0; i < dim; ++i)
            coef(i) = cd(cre(i), cim(i)) * std::polar(1.0, -energies_(i) * t);
        Eigen::VectorXcd out = vectors_.cast<cd>() * coef;
        FockStateVector res;
        res.n_max = n_max_;
        res.amplitudes.resize(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) res.amplitudes[static_cast<std::size_t>(i)] = out(i);
        return res;
    }

private:
    int n_max_;
    Eigen::MatrixXd vectors_;
    Eigen::VectorXd energies_;
};

inline FockStateVector oracle_evolve(const FockStateVector& psi, double epsilon, double omega_j,
                                     double omega_k, double t) {
    return OracleEvolver(psi.n_max, epsilon, omega_j, omega_k).evolve(psi, t);
}

namespace detail {

/// f_m(x) = sum_n A[n, m] phi_n(x) for mode j, or sum over the k index for mode k:
/// the wave-function column against the other mode's Fock label.
inline std::vector<cd> fock_wave_columns(const FockStateVector& psi, Mode m, double x) {
    const int levels = psi.levels();
    const std::vector<double> phi = eval_eigenfunctions(psi.n_max, x);
    std::vector<cd> f(static_cast<std::size_t>(levels), cd(0.0, 0.0));
    for (int other = 0; other < levels; ++other) {
        cd s(0.0, 0.0);
        for (int n = 0; n < levels; ++n)
            s += (m == Mode::j ? psi.at(n, other) : psi.at(other, n)) * phi[static_cast<std::size_t>(n)];
        f[static_cast<std::size_t>(other)] = s;
    }
    return f;
}

} // namespace detail

/// Marginal probability density of one mode: sum over the other mode's Fock
/// label of |sum_n A phi_n(x)|^2 (exact integration over the other coordinate).
inline std::vector<double> oracle_density(const FockStateVector& psi, Mode m, const QuadGrid& grid) {
    grid.validate();
    std::vector<double> out(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) {
        const std::vector<cd> f = detail::fock_wave_columns(psi, m, grid.point(i));
        double p = 0.0;
        for (const cd& v : f) p += std::norm(v);
        out[static_cast<std::size_t>(i)] = p;
    }
    return out;
}

/// Joint probability density |psi(x_j, x_k)|^2 on the grid product.
inline JointDensity oracle_joint_density(const FockStateVector& psi, const QuadGrid& grid_j,
                                         const QuadGrid& grid_k) {
    grid_j.validate();
    grid_k.validate();
    JointDensity jd;
    jd.grid_j = grid_j;
    jd.grid_k = grid_k;
    jd.p.resize(static_cast<std::size_t>(grid_j.n_points) * static_cast<std::size_t>(grid_k.n_points));
    const int levels = psi.levels();
    for (int i = 0; i < grid_j.n_points; ++i) {
        const std::vector<cd> f = detail::fock_wave_columns(psi, Mode::j, grid_j.point(i));
        for (int jx = 0; jx < grid_k.n_points; ++jx) {
            const std::vector<double> phi_k = eval_eigenfunctions(psi.n_max, grid_k.point(jx));
            cd amp(0.0, 0.0);
            for (int nk = 0; nk < levels; ++nk) amp += f[static_cast<std::size_t>(nk)] * phi_k[static_cast<std::size_t>(nk)];
            jd.p[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_k.n_points) +
                 static_cast<std::size_t>(jx)] = std::norm(amp);
        }
    }
    return jd;
}

/// Coherence 1/2 integral of [psi*(x+D, y) psi(x-D, y) + c.c.] over the other
/// coordinate, evaluated exactly through the Fock expansion.
inline double oracle_coherence(const FockStateVector& psi, Mode m, double x, double delta) {
    const std::vector<cd> fp = detail::fock_wave_columns(psi, m, x + delta);
    const std::vector<cd> fm = detail::fock_wave_columns(psi, m, x - delta);
    cd s(0.0, 0.0);
    for (std::size_t i = 0; i < fp.size(); ++i) s += std::conj(fp[i]) * fm[i];
    return s.real();
}

inline double oracle_coherence(const FockStateVector& psi, double x, double delta) {
    return oracle_coherence(psi, Mode::j, x, delta);
}

/// Wigner distribution of a pure single-mode state on a grid product.
struct WignerTable {
    QuadGrid grid_x;
    QuadGrid grid_p;
    std::vector<double> w;  // row-major [grid_x.n_points][grid_p.n_points]

    double at(int ix, int ip) const {
        return w[static_cast<std::size_t>(ix) * static_cast<std::size_t>(grid_p.n_points) +
                 static_cast<std::size_t>(ip)];
    }
};

/// W(x, p) = (1/2pi) integral dy e^{-ipy} psi*(x - y/2) psi(x + y/2), computed
/// by quadrature over y with the wave function tabulated on the x grid (the y
/// nodes are chosen so x +/- y/2 lands on grid points; the state is negligible
/// outside the grid by the coverage rule).
inline WignerTable wigner(const std::vector<cd>& fock_amplitudes, const QuadGrid& grid_x,
                          const QuadGrid& grid_p) {
    grid_x.validate();
    grid_p.validate();
    if (fock_amplitudes.empty()) throw std::domain_error("wigner: empty state");
    const int n_max = static_cast<int>(fock_amplitudes.size()) - 1;
    const int nx = grid_x.n_points;
    std::vector<cd> table(static_cast<std::size_t>(nx), cd(0.0, 0.0));
    for (int i = 0; i < nx; ++i) {
        const std::vector<double> phi = eval_eigenfunctions(n_max, grid_x.point(i));
        cd s(0.0, 0.0);
        for (std::size_t n = 0; n < fock_amplitudes.size(); ++n) s += fock_amplitudes[n] * phi[n];
        table[static_cast<std::size_t>(i)] = s;
    }
    const double h = grid_x.spacing();
    const double dy = 2.0 * h;
    const double inv_2pi = 0.15915494309189533577;
    WignerTable wt;
    wt.grid_x = grid_x;
    wt.grid_p = grid_p;
    wt.w.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(grid_p.n_points));
    for (int i = 0; i < nx; ++i) {
        const int reach = std::min(i, nx - 1 - i);
        const double p00 = std::norm(table[static_cast<std::size_t>(i)]);
        for (int ip = 0; ip < grid_p.n_points; ++ip) {
            const double p = grid_p.point(ip);
            double sum = p00;
            for (int mshift = 1; mshift <= reach; ++mshift) {
                const cd cross = std::conj(table[static_cast<std::size_t>(i - mshift)]) *
                                 table[static_cast<std::size_t>(i + mshift)];
                const double y = dy * mshift;
                sum += 2.0 * (std::cos(p * y) * cross.real() + std::sin(p * y) * cross.imag());
            }
            wt.w[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_p.n_points) +
                 static_cast<std::size_t>(ip)] = inv_2pi * dy * sum;
        }
    }
    return wt;
}

} // namespace thirdq

#endif
