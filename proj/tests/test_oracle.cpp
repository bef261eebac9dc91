#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "thirdq/oracle.hpp"
#include "thirdq/states.hpp"

using namespace thirdq;

namespace {

constexpr double pi = std::numbers::pi;

FockStateVector coherent_vacuum(double alpha, int n_max) {
    const ModeBasis mode{n_max};
    return fock_product(make_coherent(cd(alpha, 0.0), mode), make_vacuum(mode));
}

double photon_mean(const FockStateVector& psi, Mode m) {
    double s = 0.0;
    for (int nj = 0; nj <= psi.n_max; ++nj)
        for (int nk = 0; nk <= psi.n_max; ++nk)
            s += (m == Mode::j ? nj : nk) * std::norm(psi.at(nj, nk));
    return s;
}

}  // namespace

TEST_CASE("fock product rejects Z amplitudes") {
    const ModeBasis mode{4};
    CHECK_THROWS_AS(fock_product(make_zero_oscillaton(mode), make_vacuum(mode)), std::domain_error);
    const FockStateVector psi = fock_product(make_vacuum(mode), make_vacuum(mode));
    CHECK(psi.at(0, 0) == cd(1.0, 0.0));
    CHECK(psi.norm2() == 1.0);
}

TEST_CASE("free evolution only rotates phases") {
    const int n_max = 6;
    const ModeBasis mode{n_max};
    const FockStateVector psi0 =
        fock_product(make_coherent(cd(1.0, 0.5), mode), make_coherent(cd(0.4, -0.2), mode));
    const double t = 2.7;
    const FockStateVector psi = oracle_evolve(psi0, 0.0, 1.3, 0.8, t);
    for (int nj = 0; nj <= n_max; ++nj)
        for (int nk = 0; nk <= n_max; ++nk) {
            const cd want = psi0.at(nj, nk) * std::polar(1.0, -((nj + 0.5) * 1.3 + (nk + 0.5) * 0.8) * t);
            CHECK_THAT(std::abs(psi.at(nj, nk) - want), Catch::Matchers::WithinAbs(0.0, 1e-12));
        }
}

TEST_CASE("evolution is exactly unitary and conserves photons") {
    const FockStateVector psi0 = coherent_vacuum(2.0, 16);
    const OracleEvolver ev(16, 0.12, 1.0, 1.0);
    for (double t : {0.0, 3.0, 7.5, 12.0}) {
        const FockStateVector psi = ev.evolve(psi0, t);
        CHECK_THAT(psi.norm2(), Catch::Matchers::WithinAbs(psi0.norm2(), 1e-12));
        CHECK_THAT(photon_mean(psi, Mode::j) + photon_mean(psi, Mode::k),
                   Catch::Matchers::WithinAbs(photon_mean(psi0, Mode::j), 1e-10));
    }
}

TEST_CASE("beam splitter transfers a coherent state") {
    const int n_max = 16;
    const double alpha = 2.0;
    const double eps = 0.12;
    const FockStateVector psi0 = coherent_vacuum(alpha, n_max);
    const OracleEvolver ev(n_max, eps, 1.0, 1.0);
    const double n0 = photon_mean(psi0, Mode::j);
    for (double t : {2.0, 6.0, 12.0}) {
        const FockStateVector psi = ev.evolve(psi0, t);
        const double c = std::cos(0.5 * eps * t), s = std::sin(0.5 * eps * t);
        CHECK_THAT(photon_mean(psi, Mode::j), Catch::Matchers::WithinAbs(n0 * c * c, 1e-9));
        CHECK_THAT(photon_mean(psi, Mode::k), Catch::Matchers::WithinAbs(n0 * s * s, 1e-9));

        // overlap with the analytic product of coherent states (global phase dropped)
        const ModeBasis mode{n_max};
        const cd aj = std::polar(1.0, -t) * (alpha * c);
        const cd ak = std::polar(1.0, -t) * cd(0.0, -1.0) * (alpha * s);
        const FockStateVector want = fock_product(make_coherent(aj, mode), make_coherent(ak, mode));
        cd overlap(0.0, 0.0);
        for (std::size_t i = 0; i < psi.amplitudes.size(); ++i)
            overlap += std::conj(want.amplitudes[i]) * psi.amplitudes[i];
        CHECK(std::abs(overlap) > 1.0 - 1e-5);
    }
}

TEST_CASE("densities from the wave function") {
    const int n_max = 8;
    const ModeBasis mode{n_max};
    const QuadGrid grid{-9.0, 9.0, 181};
    SECTION("double vacuum joint density") {
        const FockStateVector psi = fock_product(make_vacuum(mode), make_vacuum(mode));
        const JointDensity jd = oracle_joint_density(psi, grid, grid);
        for (int i = 0; i < grid.n_points; i += 6)
            for (int j = 0; j < grid.n_points; j += 6) {
                const double x = grid.point(i), y = grid.point(j);
                CHECK_THAT(jd.at(i, j),
                           Catch::Matchers::WithinAbs(std::exp(-x * x - y * y) / pi, 1e-12));
            }
    }
    SECTION("marginal of the joint equals the mode density") {
        const FockStateVector psi0 = coherent_vacuum(1.5, n_max);
        const FockStateVector psi = oracle_evolve(psi0, 0.3, 1.0, 1.0, 4.0);
        const JointDensity jd = oracle_joint_density(psi, grid, grid);
        const std::vector<double> dj = oracle_density(psi, Mode::j, grid);
        const std::vector<double> dk = oracle_density(psi, Mode::k, grid);
        std::vector<double> inner(static_cast<std::size_t>(grid.n_points));
        for (int i = 0; i < grid.n_points; ++i) {
            for (int j = 0; j < grid.n_points; ++j) inner[static_cast<std::size_t>(j)] = jd.at(i, j);
            CHECK_THAT(trapezoid(inner, grid),
                       Catch::Matchers::WithinAbs(dj[static_cast<std::size_t>(i)], 1e-10));
        }
        for (int j = 0; j < grid.n_points; ++j) {
            for (int i = 0; i < grid.n_points; ++i) inner[static_cast<std::size_t>(i)] = jd.at(i, j);
            CHECK_THAT(trapezoid(inner, grid),
                       Catch::Matchers::WithinAbs(dk[static_cast<std::size_t>(j)], 1e-10));
        }
    }
}

TEST_CASE("coherence from the wave function") {
    const int n_max = 16;
    const ModeBasis mode{n_max};
    SECTION("delta = 0 degenerates to the density") {
        const FockStateVector psi = coherent_vacuum(2.0, n_max);
        const QuadGrid grid;
        const std::vector<double> d = oracle_density(psi, Mode::j, grid);
        for (int i = 120; i < 240; i += 17) {
            CHECK_THAT(oracle_coherence(psi, Mode::j, grid.point(i), 0.0),
                       Catch::Matchers::WithinAbs(d[static_cast<std::size_t>(i)], 1e-12));
        }
    }
    SECTION("product states factorize into the single-mode cross term") {
        const AmplitudeList cat = make_cat(2.0, 1.1, mode);
        const FockStateVector psi = fock_product(cat, make_vacuum(mode));
        const double x = 0.3, delta = 2.6;
        cd fp(0.0, 0.0), fm(0.0, 0.0);
        for (int n = 0; n <= n_max; ++n) {
            fp += cat[static_cast<std::size_t>(n) + 1] * eval_eigenfunction(n, x + delta);
            fm += cat[static_cast<std::size_t>(n) + 1] * eval_eigenfunction(n, x - delta);
        }
        CHECK_THAT(oracle_coherence(psi, Mode::j, x, delta),
                   Catch::Matchers::WithinAbs((std::conj(fp) * fm).real(), 1e-12));
    }
    SECTION("cat interference is sinusoidal in theta with the Gaussian coefficients") {
        const double alpha = 2.0;
        const double delta = std::sqrt(2.0) * alpha;
        const double root_pi = std::sqrt(pi);
        auto gauss = [&](double center, double x) {
            return std::exp(-0.5 * (x - center) * (x - center)) / std::sqrt(root_pi);
        };
        for (double theta : {0.0, 0.6, pi / 2, 2.0, pi}) {
            const FockStateVector psi = fock_product(make_cat(alpha, theta, mode), make_vacuum(mode));
            const double got = oracle_coherence(psi, Mode::j, 0.0, delta);
            const double overlap = std::exp(-2.0 * alpha * alpha);
            const double cn2 = 1.0 / (2.0 * (1.0 + std::cos(theta) * overlap));
            const double d0 = std::sqrt(2.0) * alpha;
            const double want =
                cn2 * (gauss(d0, delta) * gauss(d0, -delta) + gauss(-d0, delta) * gauss(-d0, -delta) +
                       std::cos(theta) * (gauss(d0, delta) * gauss(-d0, -delta) +
                                          gauss(-d0, delta) * gauss(d0, -delta)));
            CHECK_THAT(got, Catch::Matchers::WithinAbs(want, 1e-3));
        }
    }
}

TEST_CASE("wigner distribution") {
    const QuadGrid grid;  // +/-9, 361 points
    const QuadGrid pgrid{-9.0, 9.0, 361};
    const ModeBasis mode{16};

    SECTION("vacuum is the symmetric Gaussian") {
        std::vector<cd> vac(17, cd(0.0, 0.0));
        vac[0] = cd(1.0, 0.0);
        const WignerTable wt = wigner(vac, grid, pgrid);
        double worst = 0.0;
        for (int i = 0; i < grid.n_points; ++i) {
            const double x = grid.point(i);
            if (std::abs(x) > 4.0) continue;
            for (int j = 0; j < pgrid.n_points; ++j) {
                const double p = pgrid.point(j);
                if (std::abs(p) > 4.0) continue;
                worst = std::max(worst, std::abs(wt.at(i, j) - std::exp(-x * x - p * p) / pi));
            }
        }
        CHECK(worst < 1e-8);
    }
    SECTION("normalization and marginal") {
        const AmplitudeList cat = make_cat(2.0, 0.4, mode);
        std::vector<cd> amps(cat.begin() + 1, cat.end());
        const WignerTable wt = wigner(amps, grid, pgrid);
        std::vector<double> col(static_cast<std::size_t>(pgrid.n_points));
        std::vector<double> marg(static_cast<std::size_t>(grid.n_points));
        double worst_marginal = 0.0;
        for (int i = 0; i < grid.n_points; ++i) {
            for (int j = 0; j < pgrid.n_points; ++j) col[static_cast<std::size_t>(j)] = wt.at(i, j);
            marg[static_cast<std::size_t>(i)] = trapezoid(col, pgrid);
            cd f(0.0, 0.0);
            for (int n = 0; n <= 16; ++n) f += amps[static_cast<std::size_t>(n)] * eval_eigenfunction(n, grid.point(i));
            worst_marginal = std::max(worst_marginal,
                                      std::abs(marg[static_cast<std::size_t>(i)] - std::norm(f)));
        }
        CHECK(worst_marginal < 1e-6);
        CHECK_THAT(trapezoid(marg, grid), Catch::Matchers::WithinAbs(norm2(cat), 1e-6));
    }
    SECTION("odd cat is negative at the origin") {
        const AmplitudeList cat = make_cat(2.0, pi, mode);
        std::vector<cd> amps(cat.begin() + 1, cat.end());
        const WignerTable wt = wigner(amps, grid, pgrid);
        const int c = (grid.n_points - 1) / 2;
        // parity eigenvalue -1 pins W(0,0) = -1/pi (up to the truncation tail)
        CHECK_THAT(wt.at(c, c), Catch::Matchers::WithinAbs(-1.0 / pi, 1e-4));
        double min_w = 0.0;
        for (int i = 0; i < grid.n_points; ++i)
            for (int j = 0; j < pgrid.n_points; ++j) min_w = std::min(min_w, wt.at(i, j));
        CHECK(min_w < -0.1);
    }
}
