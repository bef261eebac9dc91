#ifndef THIRDQ_STATES_HPP
#define THIRDQ_STATES_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "thirdq/basis.hpp"
#include "thirdq/errors.hpp"
#include "thirdq/sparse.hpp"

namespace thirdq {

/// Complex amplitude vector over the joint hyper-Fock basis.
struct HyperStateVector {
    std::vector<cd> amplitudes;

    double norm2() const {
        double s = 0.0;
        for (const cd& a : amplitudes) s += std::norm(a);
        return s;
    }
};

/// Single-mode amplitude list, length ModeBasis::dim() (Z slot first).
using AmplitudeList = std::vector<cd>;

inline double norm2(const AmplitudeList& a) {
    double s = 0.0;
    for (const cd& v : a) s += std::norm(v);
    return s;
}

/// Coherent state truncated at n_max: amplitude exp(-|alpha|^2/2) alpha^n / sqrt(n!)
/// on Fock slot n, zero on the Z slot. The truncation tail is intentionally NOT
/// renormalized; 1 - norm2() is the accuracy diagnostic of the cutoff.
inline AmplitudeList make_coherent(cd alpha, const ModeBasis& basis) {
    if (std::norm(alpha) > basis.n_max / 3.0)
        throw config_error("make_coherent: |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                           " exceeds n_max/3; raise n_max to keep the truncation tail small");
    AmplitudeList amp(static_cast<std::size_t>(basis.dim()), cd(0.0, 0.0));
    cd a = std::exp(cd(-0.5 * std::norm(alpha), 0.0));
    amp[static_cast<std::size_t>(basis.fock_slot(0))] = a;
    for (int n = 1; n <= basis.n_max; ++n) {
        a *= alpha / std::sqrt(static_cast<double>(n));
        amp[static_cast<std::size_t>(basis.fock_slot(n))] = a;
    }
    return amp;
}

/// Vacuum = coherent(0): one photonless oscillaton.
inline AmplitudeList make_vacuum(const ModeBasis& basis) {
    AmplitudeList amp(static_cast<std::size_t>(basis.dim()), cd(0.0, 0.0));
    amp[static_cast<std::size_t>(basis.fock_slot(0))] = cd(1.0, 0.0);
    return amp;
}

/// Cat state c_n (|alpha> + e^{i theta} |-alpha>) with the exact normalization
/// c_n = [2 (1 + cos(theta) exp(-2 alpha^2))]^{-1/2}; alpha is real.
inline AmplitudeList make_cat(double alpha, double theta, const ModeBasis& basis) {
    const double overlap = std::exp(-2.0 * alpha * alpha);  // <alpha|-alpha>
    const double cn = 1.0 / std::sqrt(2.0 * (1.0 + std::cos(theta) * overlap));
    const AmplitudeList plus = make_coherent(cd(alpha, 0.0), basis);
    const AmplitudeList minus = make_coherent(cd(-alpha, 0.0), basis);
    const cd phase = std::polar(1.0, theta);
    AmplitudeList amp(static_cast<std::size_t>(basis.dim()), cd(0.0, 0.0));
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] = cn * (plus[i] + phase * minus[i]);
    return amp;
}

/// |Z>: no oscillatons in the mode.
inline AmplitudeList make_zero_oscillaton(const ModeBasis& basis) {
    AmplitudeList amp(static_cast<std::size_t>(basis.dim()), cd(0.0, 0.0));
    amp[ModeBasis::z_slot] = cd(1.0, 0.0);
    return amp;
}

/// Product state over the joint basis, amplitudes[l(l_j, l_k)] = a_j[l_j] a_k[l_k].
inline HyperStateVector tensor(const AmplitudeList& a_j, const AmplitudeList& a_k,
                               const JointHyperBasis& basis) {
    if (a_j.size() != static_cast<std::size_t>(basis.mode_j.dim()) ||
        a_k.size() != static_cast<std::size_t>(basis.mode_k.dim()))
        throw std::domain_error("tensor: amplitude list length does not match basis");
    HyperStateVector psi;
    psi.amplitudes.resize(static_cast<std::size_t>(basis.joint_dim()));
    for (int lj = 0; lj < basis.mode_j.dim(); ++lj)
        for (int lk = 0; lk < basis.mode_k.dim(); ++lk)
            psi.amplitudes[static_cast<std::size_t>(basis.index(lj, lk))] =
                a_j[static_cast<std::size_t>(lj)] * a_k[static_cast<std::size_t>(lk)];
    return psi;
}

} // namespace thirdq

#endif
