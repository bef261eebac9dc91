#ifndef THIRDQ_GENERALIZED_HPP
#define THIRDQ_GENERALIZED_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "thirdq/errors.hpp"
#include "thirdq/sparse.hpp"

namespace thirdq {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultFineStructure = 1.0 / 137.035999;

/// Mixing angle of the operator transformation, with the normalization that
/// keeps the commutation relations: beta^2 (cos^2 g - sin^2 g) = 1.
struct BogoliubovParams {
    double gamma = 0.0;

    void validate() const {
        if (!(std::abs(gamma) < kPi / 4.0))
            throw config_error("BogoliubovParams: |gamma| must be < pi/4 for finite beta");
    }

    double beta() const {
        validate();
        const double c = std::cos(gamma), s = std::sin(gamma);
        return 1.0 / std::sqrt(c * c - s * s);
    }
};

/// c'      = beta (cos g c + sin g c_dag)
/// c'_dag  = beta (sin g c + cos g c_dag)
inline std::pair<SparseOperator, SparseOperator>
bogoliubov_apply(const SparseOperator& c, const SparseOperator& c_dag, const BogoliubovParams& params) {
    const double b = params.beta();
    const cd bc(b * std::cos(params.gamma), 0.0);
    const cd bs(b * std::sin(params.gamma), 0.0);
    SparseOperator c_prime = c.scaled(bc).add_scaled(c_dag, bs);
    SparseOperator c_prime_dag = c.scaled(bs).add_scaled(c_dag, bc);
    return {std::move(c_prime), std::move(c_prime_dag)};
}

/// One light mode (frequency omega) displacement-coupled to one heavy boson
/// mode (frequency Omega, with hbar Omega playing the role of the rest energy).
struct MassiveCouplingConfig {
    double epsilon = 0.05;
    double omega = 1.0;
    double Omega = 50.0;
    int cutoff_c = 20;
    int cutoff_b = 6;

    void validate() const {
        if (!(omega > 0.0) || !(Omega > 0.0))
            throw config_error("MassiveCouplingConfig: frequencies must be positive");
        if (Omega / omega < 10.0)
            throw config_error("MassiveCouplingConfig: Omega/omega must be >= 10 (heavy-boson regime)");
        if (cutoff_c < 4 || cutoff_b < 2)
            throw config_error("MassiveCouplingConfig: cutoffs too small");
    }

    bool hierarchy_warning() const { return Omega / omega < 25.0; }
    bool coupling_warning() const { return std::abs(epsilon) >= 0.2; }
};

/// gamma = eps^2 / (omega * Omega)  (hbar = 1).
inline double gamma_closed_form(const MassiveCouplingConfig& cfg) {
    cfg.validate();
    return cfg.epsilon * cfg.epsilon / (cfg.omega * cfg.Omega);
}

/// Brute-force check of the closed form: diagonalize
///   H = omega (c^dag c + 1/2) + Omega (b^dag b + 1/2) + eps (b + b^dag)(c + c^dag)
/// exactly on the truncated product space and read the anomalous pair amplitude
/// <G| c c |G> of the dressed ground state. To leading order that amplitude is
/// the mixing angle of the operator transformation, so it estimates gamma with
/// O(omega/Omega) corrections.
inline double gamma_numerical_oracle(const MassiveCouplingConfig& cfg) {
    cfg.validate();
    const int nc = cfg.cutoff_c + 1;
    const int nb = cfg.cutoff_b + 1;
    const int dim = nc * nb;
    auto idx = [nb](int c, int b) { return c * nb + b; };
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int c = 0; c < nc; ++c) {
        for (int b = 0; b < nb; ++b) {
            h(idx(c, b), idx(c, b)) = cfg.omega * (c + 0.5) + cfg.Omega * (b + 0.5);
            // eps (b + b^dag)(c + c^dag): four raising/lowering combinations.
            if (c + 1 < nc && b + 1 < nb) {
                const double v = cfg.epsilon * std::sqrt((c + 1.0) * (b + 1.0));
                h(idx(c + 1, b + 1), idx(c, b)) += v;
                h(idx(c, b), idx(c + 1, b + 1)) += v;
            }
            if (c + 1 < nc && b - 1 >= 0) {
                const double v = cfg.epsilon * std::sqrt((c + 1.0) * b);
                h(idx(c + 1, b - 1), idx(c, b)) += v;
                h(idx(c, b), idx(c + 1, b - 1)) += v;
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success)
        throw numerical_error("gamma_numerical_oracle: eigendecomposition failed");
    const Eigen::VectorXd g = es.eigenvectors().col(0);
    double edge = 0.0;
    for (int b = 0; b < nb; ++b) edge += g(idx(nc - 1, b)) * g(idx(nc - 1, b));
    for (int c = 0; c < nc; ++c) edge += g(idx(c, nb - 1)) * g(idx(c, nb - 1));
    if (edge > 1e-10)
        throw config_error("gamma_numerical_oracle: ground-state occupation at the cutoff is " +
                           std::to_string(edge) + "; raise cutoff_c/cutoff_b");
    double cc = 0.0;
    for (int c = 0; c + 2 < nc; ++c)
        for (int b = 0; b < nb; ++b)
            cc += std::sqrt((c + 1.0) * (c + 2.0)) * g(idx(c + 2, b)) * g(idx(c, b));
    return cc;
}

/// Parameters of the subharmonic photon scattering estimate (hbar = c = 1).
struct ScatteringConfig {
    double omega = 1.0;        // incident angular frequency
    double detuning = 0.01;    // hbar omega - E_A
    double dipole_d = 1.0;     // |<I| x |0>|
    double length_L = 1.0;     // quantization length
    double solid_angle = 1e-3; // dOmega_S
    double alpha_fs = kDefaultFineStructure;
    double gamma = 1e-3;       // mixing angle
    double mass_m = 0.0;       // oscillaton rest energy m c^2

    void validate() const {
        if (!(omega > 0.0)) throw config_error("ScatteringConfig: omega must be positive");
        if (detuning == 0.0) throw config_error("ScatteringConfig: detuning must be nonzero");
        if (!(length_L > 0.0) || !(solid_angle > 0.0) || !(alpha_fs > 0.0))
            throw config_error("ScatteringConfig: L, solid angle, and alpha must be positive");
        if (mass_m < 0.0) throw config_error("ScatteringConfig: mass must be >= 0");
    }

    bool detuning_warning() const { return std::abs(detuning) >= 0.1 * omega; }
    double charge() const { return std::sqrt(alpha_fs); }
};

/// Energy conservation for the pair-creation channel: omega' = omega/2 - m.
inline double subharmonic_frequency(const ScatteringConfig& cfg) {
    cfg.validate();
    const double w = cfg.omega / 2.0 - cfg.mass_m;
    if (!(w > 0.0))
        throw config_error("subharmonic_frequency: omega' <= 0, kinematically forbidden mass");
    return w;
}

/// <I|H'|0> = i omega q sqrt(2 pi / (omega L^3)) d  (dipole approximation, d.eps = d).
inline cd matrix_element_initial(const ScatteringConfig& cfg) {
    cfg.validate();
    const double mag = cfg.omega * cfg.charge() *
                       std::sqrt(2.0 * kPi / (cfg.omega * std::pow(cfg.length_L, 3))) * cfg.dipole_d;
    return cd(0.0, mag);
}

/// <f|H'|I> = -i 2 sqrt(2) omega q gamma sqrt(2 pi / (omega' L^3)) d.
inline cd matrix_element_final(const ScatteringConfig& cfg) {
    const double wp = subharmonic_frequency(cfg);
    const double mag = 2.0 * std::sqrt(2.0) * cfg.omega * cfg.charge() * cfg.gamma *
                       std::sqrt(2.0 * kPi / (wp * std::pow(cfg.length_L, 3))) * cfg.dipole_d;
    return cd(0.0, -mag);
}

/// Photon density of final states into the solid angle: L^3 w^2 dOmega / (8 pi^3).
inline double photon_density_of_states(double omega_out, double length_L, double solid_angle) {
    return std::pow(length_L, 3) * omega_out * omega_out * solid_angle / (8.0 * kPi * kPi * kPi);
}

/// Subharmonic rate, closed form as printed:
///   Gamma = 16 pi alpha^2 gamma^2 (omega/Delta)^2 (d^4 / (L^3 lambda)) omega' dOmega.
inline double subharmonic_rate(const ScatteringConfig& cfg) {
    const double wp = subharmonic_frequency(cfg);
    const double lambda = 2.0 * kPi / cfg.omega;
    const double ratio = cfg.omega / cfg.detuning;
    return 16.0 * kPi * cfg.alpha_fs * cfg.alpha_fs * cfg.gamma * cfg.gamma * ratio * ratio *
           std::pow(cfg.dipole_d, 4) / (std::pow(cfg.length_L, 3) * lambda) * wp * cfg.solid_angle;
}

/// Same rate assembled through second-order perturbation theory from the two
/// matrix elements and the density of final states:
///   Gamma = 2 pi |<f|H'|I><I|H'|0> / Delta|^2 rho(omega').
inline double subharmonic_rate_assembled(const ScatteringConfig& cfg) {
    const double wp = subharmonic_frequency(cfg);
    const double amp = std::abs(matrix_element_final(cfg)) * std::abs(matrix_element_initial(cfg)) /
                       std::abs(cfg.detuning);
    return 2.0 * kPi * amp * amp * photon_density_of_states(wp, cfg.length_L, cfg.solid_angle);
}

/// Elastic rate computed the same way: omega' = omega and no 2 sqrt(2) gamma
/// factor in the final matrix element.
inline double elastic_rate(const ScatteringConfig& cfg) {
    cfg.validate();
    const double amp = std::norm(matrix_element_initial(cfg)) / std::abs(cfg.detuning);
    return 2.0 * kPi * amp * amp * photon_density_of_states(cfg.omega, cfg.length_L, cfg.solid_angle);
}

/// Predicted subharmonic/elastic ratio R = 4 gamma^2 (small gamma).
inline double rate_ratio(double gamma) { return 4.0 * gamma * gamma; }

inline bool rate_ratio_small_angle(double gamma) { return std::abs(gamma) <= 0.1; }

/// The ratio assembled from the two explicit rates; a parameter-free
/// consistency check against rate_ratio for zero oscillaton mass.
inline double rate_ratio_pipeline(const ScatteringConfig& cfg) {
    return subharmonic_rate(cfg) / elastic_rate(cfg);
}

} // namespace thirdq

#endif
