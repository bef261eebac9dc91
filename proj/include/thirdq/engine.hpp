#ifndef THIRDQ_ENGINE_HPP
#define THIRDQ_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "thirdq/errors.hpp"
#include "thirdq/grid.hpp"
#include "thirdq/hermite.hpp"
#include "thirdq/operators.hpp"
#include "thirdq/states.hpp"

namespace thirdq {

struct EngineConfig {
    double omega_j = 1.0;
    double omega_k = 1.0;
    double epsilon = 0.12;
    double t_final = 12.0;
    int steps = 1200;
    int n_max = 16;

    void validate() const {
        if (!(steps >= 1)) throw config_error("EngineConfig: steps must be >= 1");
        if (!(t_final >= 0.0) || !std::isfinite(t_final))
            throw config_error("EngineConfig: t_final must be finite and >= 0");
        if (!std::isfinite(epsilon)) throw config_error("EngineConfig: epsilon must be finite and real");
        if (!(omega_j > 0.0) || !(omega_k > 0.0))
            throw config_error("EngineConfig: mode frequencies must be positive");
        if (n_max < 1) throw config_error("EngineConfig: n_max must be >= 1");
    }

    /// The rotating-wave form assumes the coupling is slow against the carrier.
    bool rwa_warning() const { return std::abs(epsilon) >= std::min(omega_j, omega_k) / 4.0; }

    double dt() const { return t_final / steps; }
};

/// Heisenberg-picture snapshot: the lab-frame matrices c_{jn}(t), c_{kn}(t).
struct EvolutionState {
    double t = 0.0;
    std::vector<SparseOperator> cj;
    std::vector<SparseOperator> ck;
};

/// Evaluates all phi_0..phi_{n_max} at one x with a single recurrence sweep.
inline std::vector<double> eval_eigenfunctions(int n_max, double x) {
    std::vector<double> phi(static_cast<std::size_t>(n_max) + 1);
    const double pi_quarter = 0.75112554446494248286;
    double prev = 0.0;
    double cur = pi_quarter * std::exp(-0.5 * x * x);
    phi[0] = cur;
    for (int m = 0; m < n_max; ++m) {
        const double next =
            x * std::sqrt(2.0 / (m + 1)) * cur - std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
        prev = cur;
        cur = next;
        phi[static_cast<std::size_t>(m) + 1] = cur;
    }
    return phi;
}

/// Integrates the coupled operator equations of motion for two beam-splitter
/// modes with classic fixed-step RK4.
///
/// Internally the free phases are factored out: c_{jn}(t) = e^{-i(n+1/2)w_j t} g_{jn}(t)
/// and only the slow envelope g is stepped. The transformation is exact, so the
/// integrated system is the printed equation of motion unchanged, but the
/// stiff (n+1/2)w carrier no longer limits the step accuracy; free evolution is
/// reproduced to machine precision at any step count.
class HeisenbergEngine {
public:
    explicit HeisenbergEngine(const EngineConfig& cfg) : cfg_(cfg), alg_(cfg.n_max) {
        cfg_.validate();
    }

    const EngineConfig& config() const { return cfg_; }
    const OperatorAlgebra& algebra() const { return alg_; }
    const JointHyperBasis& basis() const { return alg_.basis(); }

    /// Heisenberg initial condition: the Schrodinger-picture matrices at t = 0.
    EvolutionState initial_state() const {
        EvolutionState s;
        s.t = 0.0;
        s.cj = alg_.c_ops(Mode::j);
        s.ck = alg_.c_ops(Mode::k);
        return s;
    }

    /// Lab-frame time derivative of every matrix, i.e. the printed equations:
    ///   i dc_{jn}/dt = (n+1/2) w_j c_{jn}
    ///                + (eps/2) sqrt(n)   c_{j,n-1} sum_m sqrt(m)   c^dag_{k,m-1} c_{k,m}
    ///                + (eps/2) sqrt(n+1) c_{j,n+1} sum_m sqrt(m+1) c^dag_{k,m+1} c_{k,m}
    /// with the j <-> k mirrored equation, sums truncated at n_max.
    std::pair<std::vector<SparseOperator>, std::vector<SparseOperator>>
    rhs(const EvolutionState& state) const {
        check_lists(state);
        const SparseOperator sk_minus = lowering_sum(state.ck);
        const SparseOperator sj_minus = lowering_sum(state.cj);
        const cd one(1.0, 0.0);
        std::vector<SparseOperator> dj =
            mode_coupling(state.cj, sk_minus, sk_minus.adjoint(), one, one);
        std::vector<SparseOperator> dk =
            mode_coupling(state.ck, sj_minus, sj_minus.adjoint(), one, one);
        for (int n = 0; n <= cfg_.n_max; ++n) {
            dj[static_cast<std::size_t>(n)] = dj[static_cast<std::size_t>(n)].add_scaled(
                state.cj[static_cast<std::size_t>(n)], cd(0.0, -(n + 0.5) * cfg_.omega_j));
            dk[static_cast<std::size_t>(n)] = dk[static_cast<std::size_t>(n)].add_scaled(
                state.ck[static_cast<std::size_t>(n)], cd(0.0, -(n + 0.5) * cfg_.omega_k));
        }
        return {std::move(dj), std::move(dk)};
    }

    /// Runs the integrator, invoking the observer at every requested sample time
    /// (each of which must sit on the step grid). Nothing else is retained.
    void evolve_observe(const std::vector<double>& sample_times,
                        const std::function<void(const EvolutionState&)>& observer) const {
        const std::vector<int> sample_steps = resolve_sample_steps(sample_times);
        Frame y{alg_.c_ops(Mode::j), alg_.c_ops(Mode::k)};
        std::size_t next = 0;
        while (next < sample_steps.size() && sample_steps[next] == 0) {
            observer(reconstruct(y, 0.0));
            ++next;
        }
        const double dt = cfg_.dt();
        for (int step = 0; step < cfg_.steps && next < sample_steps.size(); ++step) {
            const double t0 = cfg_.t_final * step / cfg_.steps;
            rk4_step(y, t0, dt);
            check_finite(y, step + 1);
            const double t1 = cfg_.t_final * (step + 1) / cfg_.steps;
            while (next < sample_steps.size() && sample_steps[next] == step + 1) {
                observer(reconstruct(y, t1));
                ++next;
            }
        }
    }

    /// Collects snapshots at the requested sample times.
    std::vector<EvolutionState> evolve(const std::vector<double>& sample_times) const {
        std::vector<EvolutionState> out;
        out.reserve(sample_times.size());
        evolve_observe(sample_times, [&out](const EvolutionState& s) { out.push_back(s); });
        return out;
    }

    /// Integrates a snapshot back to t = 0 with the time step negated.
    EvolutionState reverse(const EvolutionState& snapshot, int steps) const {
        if (steps < 1) throw config_error("reverse: steps must be >= 1");
        Frame y = to_frame(snapshot);
        const double dt = -snapshot.t / steps;
        for (int step = 0; step < steps; ++step) {
            const double t0 = snapshot.t + dt * step;
            rk4_step(y, t0, dt);
            check_finite(y, step + 1);
        }
        return reconstruct(y, 0.0);
    }

private:
    struct Frame {
        std::vector<SparseOperator> gj;
        std::vector<SparseOperator> gk;
    };

    /// sum_{m=1..n_max} sqrt(m) c^dag_{m-1} c_m built from the given matrices.
    static SparseOperator lowering_sum(const std::vector<SparseOperator>& c) {
        SparseOperator sum(c.front().dim());
        for (std::size_t m = 1; m < c.size(); ++m)
            sum = sum.add_scaled(c[m - 1].adjoint() * c[m],
                                 cd(std::sqrt(static_cast<double>(m)), 0.0));
        return sum;
    }

    /// The epsilon terms of one mode's equation of motion:
    ///   out[n] = -i (eps/2) [ sqrt(n) ph_m c[n-1] S_minus + sqrt(n+1) ph_p c[n+1] S_plus ]
    std::vector<SparseOperator> mode_coupling(const std::vector<SparseOperator>& c,
                                              const SparseOperator& s_minus,
                                              const SparseOperator& s_plus, cd ph_minus,
                                              cd ph_plus) const {
        const int n_max = cfg_.n_max;
        const int d = c.front().dim();
        std::vector<SparseOperator> out;
        out.reserve(static_cast<std::size_t>(n_max) + 1);
        for (int n = 0; n <= n_max; ++n) {
            SparseOperator term(d);
            if (n > 0)
                term = term.add_scaled(c[static_cast<std::size_t>(n) - 1] * s_minus,
                                       cd(0.0, -0.5 * cfg_.epsilon * std::sqrt(static_cast<double>(n))) *
                                           ph_minus);
            if (n < n_max)
                term = term.add_scaled(c[static_cast<std::size_t>(n) + 1] * s_plus,
                                       cd(0.0, -0.5 * cfg_.epsilon * std::sqrt(n + 1.0)) * ph_plus);
            out.push_back(std::move(term));
        }
        return out;
    }

    /// Envelope derivative in the co-rotating frame at time t.
    Frame envelope_rhs(double t, const Frame& y) const {
        if (cfg_.epsilon == 0.0) {
            Frame zero;
            zero.gj.assign(y.gj.size(), SparseOperator(y.gj.front().dim()));
            zero.gk.assign(y.gk.size(), SparseOperator(y.gk.front().dim()));
            return zero;
        }
        const SparseOperator sk_minus = lowering_sum(y.gk);
        const SparseOperator sj_minus = lowering_sum(y.gj);
        const double detune = cfg_.omega_j - cfg_.omega_k;
        const cd ph = std::polar(1.0, detune * t);
        Frame d;
        d.gj = mode_coupling(y.gj, sk_minus, sk_minus.adjoint(), ph, std::conj(ph));
        d.gk = mode_coupling(y.gk, sj_minus, sj_minus.adjoint(), std::conj(ph), ph);
        return d;
    }

    static Frame axpy(const Frame& y, double a, const Frame& k) {
        Frame out;
        out.gj.reserve(y.gj.size());
        out.gk.reserve(y.gk.size());
        for (std::size_t n = 0; n < y.gj.size(); ++n)
            out.gj.push_back(y.gj[n].add_scaled(k.gj[n], cd(a, 0.0)));
        for (std::size_t n = 0; n < y.gk.size(); ++n)
            out.gk.push_back(y.gk[n].add_scaled(k.gk[n], cd(a, 0.0)));
        return out;
    }

    void rk4_step(Frame& y, double t, double dt) const {
        const Frame k1 = envelope_rhs(t, y);
        const Frame k2 = envelope_rhs(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
        const Frame k3 = envelope_rhs(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
        const Frame k4 = envelope_rhs(t + dt, axpy(y, dt, k3));
        for (std::size_t n = 0; n < y.gj.size(); ++n) {
            SparseOperator incr = k1.gj[n].add_scaled(k2.gj[n], cd(2.0, 0.0));
            incr = incr.add_scaled(k3.gj[n], cd(2.0, 0.0));
            incr = incr.add_scaled(k4.gj[n], cd(1.0, 0.0));
            y.gj[n] = y.gj[n].add_scaled(incr, cd(dt / 6.0, 0.0));
        }
        for (std::size_t n = 0; n < y.gk.size(); ++n) {
            SparseOperator incr = k1.gk[n].add_scaled(k2.gk[n], cd(2.0, 0.0));
            incr = incr.add_scaled(k3.gk[n], cd(2.0, 0.0));
            incr = incr.add_scaled(k4.gk[n], cd(1.0, 0.0));
            y.gk[n] = y.gk[n].add_scaled(incr, cd(dt / 6.0, 0.0));
        }
    }

    EvolutionState reconstruct(const Frame& y, double t) const {
        EvolutionState s;
        s.t = t;
        s.cj.reserve(y.gj.size());
        s.ck.reserve(y.gk.size());
        for (std::size_t n = 0; n < y.gj.size(); ++n)
            s.cj.push_back(y.gj[n].scaled(std::polar(1.0, -(static_cast<double>(n) + 0.5) * cfg_.omega_j * t)));
        for (std::size_t n = 0; n < y.gk.size(); ++n)
            s.ck.push_back(y.gk[n].scaled(std::polar(1.0, -(static_cast<double>(n) + 0.5) * cfg_.omega_k * t)));
        return s;
    }

    Frame to_frame(const EvolutionState& snapshot) const {
        check_lists(snapshot);
        Frame y;
        y.gj.reserve(snapshot.cj.size());
        y.gk.reserve(snapshot.ck.size());
        for (std::size_t n = 0; n < snapshot.cj.size(); ++n)
            y.gj.push_back(snapshot.cj[n].scaled(
                std::polar(1.0, (static_cast<double>(n) + 0.5) * cfg_.omega_j * snapshot.t)));
        for (std::size_t n = 0; n < snapshot.ck.size(); ++n)
            y.gk.push_back(snapshot.ck[n].scaled(
                std::polar(1.0, (static_cast<double>(n) + 0.5) * cfg_.omega_k * snapshot.t)));
        return y;
    }

    std::vector<int> resolve_sample_steps(const std::vector<double>& sample_times) const {
        std::vector<int> steps;
        steps.reserve(sample_times.size());
        const double dt = cfg_.dt();
        for (double t : sample_times) {
            if (t < 0.0 || t > cfg_.t_final + 1e-12)
                throw config_error("sample time " + std::to_string(t) + " outside [0, t_final]");
            const double ratio = cfg_.t_final > 0.0 ? t / dt : 0.0;
            const int step = static_cast<int>(std::lround(ratio));
            if (std::abs(ratio - step) > 1e-9 * std::max(1.0, std::abs(ratio)))
                throw config_error("sample time " + std::to_string(t) +
                                   " does not lie on the step grid (dt = " + std::to_string(dt) + ")");
            steps.push_back(step);
        }
        std::sort(steps.begin(), steps.end());
        steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
        return steps;
    }

    void check_lists(const EvolutionState& s) const {
        if (s.cj.size() != static_cast<std::size_t>(cfg_.n_max) + 1 ||
            s.ck.size() != static_cast<std::size_t>(cfg_.n_max) + 1)
            throw std::domain_error("EvolutionState: matrix list length does not match n_max");
    }

    void check_finite(const Frame& y, int step) const {
        for (const auto& m : y.gj)
            if (!m.all_finite())
                throw numerical_error("non-finite matrix entry at step " + std::to_string(step) +
                                      "; the step count is too small for this coupling");
        for (const auto& m : y.gk)
            if (!m.all_finite())
                throw numerical_error("non-finite matrix entry at step " + std::to_string(step) +
                                      "; the step count is too small for this coupling");
    }

    EngineConfig cfg_;
    OperatorAlgebra alg_;
};

/// Clips tiny negative round-off in probability densities; anything more
/// negative signals an integration failure.
inline double clip_density(double p) {
    if (p >= 0.0) return p;
    if (p >= -1e-10) return 0.0;
    throw numerical_error("probability density below -1e-10: integration failure");
}

namespace detail {

/// w_n = c_n(t) |psi0> for every level of one mode.
inline std::vector<std::vector<cd>> level_images(const EvolutionState& snap, Mode m,
                                                 const HyperStateVector& psi0) {
    const auto& mats = m == Mode::j ? snap.cj : snap.ck;
    std::vector<std::vector<cd>> w;
    w.reserve(mats.size());
    for (const auto& c : mats) w.push_back(c.apply(psi0.amplitudes));
    return w;
}

inline cd dot(const std::vector<cd>& a, const std::vector<cd>& b) {
    cd s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// Gram matrix G_{n n'} = <w_n, w_n'> (row-major).
inline std::vector<cd> gram(const std::vector<std::vector<cd>>& w) {
    const std::size_t n = w.size();
    std::vector<cd> g(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        g[a * n + a] = cd(dot(w[a], w[a]).real(), 0.0);
        for (std::size_t b = a + 1; b < n; ++b) {
            const cd v = dot(w[a], w[b]);
            g[a * n + b] = v;
            g[b * n + a] = std::conj(v);
        }
    }
    return g;
}

} // namespace detail

/// P(x, t) = <psi0| psi^dag(x, t) psi(x, t) |psi0> over the grid.
inline std::vector<double> density(const EvolutionState& snap, Mode m, const QuadGrid& grid,
                                   const HyperStateVector& psi0) {
    grid.validate();
    const auto w = detail::level_images(snap, m, psi0);
    const int n_max = static_cast<int>(w.size()) - 1;
    std::vector<double> out(static_cast<std::size_t>(grid.n_points));
    std::vector<cd> v(w.front().size());
    for (int i = 0; i < grid.n_points; ++i) {
        const std::vector<double> phi = eval_eigenfunctions(n_max, grid.point(i));
        std::fill(v.begin(), v.end(), cd(0.0, 0.0));
        for (std::size_t n = 0; n < w.size(); ++n) {
            const double f = phi[n];
            const auto& wn = w[n];
            for (std::size_t a = 0; a < v.size(); ++a) v[a] += f * wn[a];
        }
        double p = 0.0;
        for (const cd& a : v) p += std::norm(a);
        out[static_cast<std::size_t>(i)] = clip_density(p);
    }
    return out;
}

/// Joint density over a grid product (row index follows grid_j).
struct JointDensity {
    QuadGrid grid_j;
    QuadGrid grid_k;
    std::vector<double> p;  // row-major [grid_j.n_points][grid_k.n_points]

    double at(int i, int j) const {
        return p[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_k.n_points) +
                 static_cast<std::size_t>(j)];
    }
};

/// P(x_j, x_k, t) = <psi^dag_j psi^dag_k psi_k psi_j> on the grid product.
inline JointDensity joint_density(const EvolutionState& snap, const QuadGrid& grid_j,
                                  const QuadGrid& grid_k, const HyperStateVector& psi0) {
    grid_j.validate();
    grid_k.validate();
    const std::size_t dim = psi0.amplitudes.size();
    const std::size_t nj = snap.cj.size();
    const std::size_t nk = snap.ck.size();
    // z[m][n] = c_{k,m}(t) c_{j,n}(t) |psi0>
    std::vector<std::vector<cd>> u = detail::level_images(snap, Mode::j, psi0);
    std::vector<std::vector<std::vector<cd>>> z(nk);
    for (std::size_t m = 0; m < nk; ++m) {
        z[m].reserve(nj);
        for (std::size_t n = 0; n < nj; ++n) z[m].push_back(snap.ck[m].apply(u[n]));
    }
    JointDensity jd;
    jd.grid_j = grid_j;
    jd.grid_k = grid_k;
    jd.p.resize(static_cast<std::size_t>(grid_j.n_points) * static_cast<std::size_t>(grid_k.n_points));
    std::vector<std::vector<cd>> wm(nk, std::vector<cd>(dim));
    std::vector<double> gre(nk * nk);
    for (int i = 0; i < grid_j.n_points; ++i) {
        const std::vector<double> phi_j = eval_eigenfunctions(static_cast<int>(nj) - 1, grid_j.point(i));
        for (std::size_t m = 0; m < nk; ++m) {
            auto& v = wm[m];
            std::fill(v.begin(), v.end(), cd(0.0, 0.0));
            for (std::size_t n = 0; n < nj; ++n) {
                const double f = phi_j[n];
                const auto& zmn = z[m][n];
                for (std::size_t a = 0; a < dim; ++a) v[a] += f * zmn[a];
            }
        }
        for (std::size_t a = 0; a < nk; ++a)
            for (std::size_t b = 0; b < nk; ++b) gre[a * nk + b] = detail::dot(wm[a], wm[b]).real();
        for (int jx = 0; jx < grid_k.n_points; ++jx) {
            const std::vector<double> phi_k =
                eval_eigenfunctions(static_cast<int>(nk) - 1, grid_k.point(jx));
            double p = 0.0;
            for (std::size_t a = 0; a < nk; ++a) {
                p += phi_k[a] * phi_k[a] * gre[a * nk + a];
                for (std::size_t b = a + 1; b < nk; ++b) p += 2.0 * phi_k[a] * phi_k[b] * gre[a * nk + b];
            }
            jd.p[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_k.n_points) +
                 static_cast<std::size_t>(jx)] = clip_density(p);
        }
    }
    return jd;
}

/// Half-product expectation <psi(x+D) Psi, psi(x-D) Psi>; its real part is the
/// coherence <C_m(x, Delta)> (the h.c. term of the operator supplies the
/// conjugate half).
inline cd coherence_value(const EvolutionState& snap, Mode m, double x, double delta,
                          const QuadGrid& grid, const HyperStateVector& psi0) {
    if (!grid.contains(x + delta) || !grid.contains(x - delta))
        throw std::domain_error("coherence_value: x +/- delta outside the grid");
    const auto w = detail::level_images(snap, m, psi0);
    const int n_max = static_cast<int>(w.size()) - 1;
    const std::vector<double> phi_plus = eval_eigenfunctions(n_max, x + delta);
    const std::vector<double> phi_minus = eval_eigenfunctions(n_max, x - delta);
    const std::vector<cd> g = detail::gram(w);
    cd s(0.0, 0.0);
    for (std::size_t a = 0; a < w.size(); ++a)
        for (std::size_t b = 0; b < w.size(); ++b) s += phi_plus[a] * phi_minus[b] * g[a * w.size() + b];
    return s;
}

/// Coherence scan over theta for cat states in mode j (mode k in vacuum):
/// <C_j(0, Delta)> evaluated with the snapshot's matrices.
inline std::vector<double> coherence_scan(const EvolutionState& snap, const JointHyperBasis& basis,
                                          const QuadGrid& grid, double delta,
                                          const std::vector<double>& thetas, double alpha) {
    std::vector<double> out;
    out.reserve(thetas.size());
    const AmplitudeList vac = make_vacuum(basis.mode_k);
    for (double theta : thetas) {
        const HyperStateVector psi0 = tensor(make_cat(alpha, theta, basis.mode_j), vac, basis);
        out.push_back(coherence_value(snap, Mode::j, 0.0, delta, grid, psi0).real());
    }
    return out;
}

struct DeltaScan {
    double delta = 0.0;
    double contrast = 0.0;
};

/// Scans Delta and returns the value maximizing the theta-contrast
/// max_theta <C> - min_theta <C> of the cat-state interference pattern.
inline DeltaScan maximize_delta(const EvolutionState& snap, const JointHyperBasis& basis,
                                const QuadGrid& grid, const std::vector<double>& thetas,
                                double alpha, double delta_min = 0.1, double delta_max = 4.0,
                                int delta_points = 79) {
    if (delta_points < 1) throw config_error("maximize_delta: delta_points must be >= 1");
    const AmplitudeList vac = make_vacuum(basis.mode_k);
    const std::size_t levels = snap.cj.size();
    // Gram matrices per theta are Delta-independent; scan them once.
    std::vector<std::vector<cd>> grams;
    grams.reserve(thetas.size());
    for (double theta : thetas) {
        const HyperStateVector psi0 = tensor(make_cat(alpha, theta, basis.mode_j), vac, basis);
        grams.push_back(detail::gram(detail::level_images(snap, Mode::j, psi0)));
    }
    DeltaScan best;
    for (int i = 0; i < delta_points; ++i) {
        const double delta =
            delta_points == 1 ? delta_min
                              : delta_min + (delta_max - delta_min) * i / (delta_points - 1);
        if (!grid.contains(delta) || !grid.contains(-delta))
            throw std::domain_error("maximize_delta: delta outside the grid");
        const std::vector<double> phi_plus = eval_eigenfunctions(static_cast<int>(levels) - 1, delta);
        const std::vector<double> phi_minus = eval_eigenfunctions(static_cast<int>(levels) - 1, -delta);
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (const auto& g : grams) {
            cd s(0.0, 0.0);
            for (std::size_t a = 0; a < levels; ++a)
                for (std::size_t b = 0; b < levels; ++b) s += phi_plus[a] * phi_minus[b] * g[a * levels + b];
            const double v = s.real();
            if (first || v < lo) lo = v;
            if (first || v > hi) hi = v;
            first = false;
        }
        const double contrast = hi - lo;
        if (contrast > best.contrast) {
            best.delta = delta;
            best.contrast = contrast;
        }
    }
    return best;
}

/// Scalar observables of one mode evaluated on a snapshot.
struct ModeExpectations {
    double oscillatons = 0.0;  // <sum_n N_n>
    double photons = 0.0;      // <sum_n n N_n>
    double mean_x = 0.0;       // <X(t)>
};

inline ModeExpectations mode_expectations(const EvolutionState& snap, Mode m,
                                          const HyperStateVector& psi0) {
    const auto w = detail::level_images(snap, m, psi0);
    ModeExpectations e;
    const double inv_sqrt2 = 0.70710678118654752440;
    for (std::size_t n = 0; n < w.size(); ++n) {
        double nn = 0.0;
        for (const cd& a : w[n]) nn += std::norm(a);
        e.oscillatons += nn;
        e.photons += static_cast<double>(n) * nn;
        if (n > 0)
            e.mean_x += inv_sqrt2 * std::sqrt(static_cast<double>(n)) * 2.0 *
                        detail::dot(w[n - 1], w[n]).real();
    }
    return e;
}

} // namespace thirdq

#endif
