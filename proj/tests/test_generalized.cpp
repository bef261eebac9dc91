#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "thirdq/generalized.hpp"
#include "thirdq/sparse.hpp"

using namespace thirdq;

namespace {

/// Standard untruncated ladder matrices on a plain N-level oscillator.
SparseOperator annihilation_matrix(int levels) {
    std::vector<std::tuple<int, int, cd>> trips;
    for (int n = 1; n < levels; ++n)
        trips.emplace_back(n - 1, n, cd(std::sqrt(static_cast<double>(n)), 0.0));
    return SparseOperator::from_triplets(levels, trips);
}

}  // namespace

TEST_CASE("bogoliubov parameters") {
    CHECK(BogoliubovParams{0.0}.beta() == 1.0);
    CHECK_THROWS_AS(BogoliubovParams{kPi / 4.0}.validate(), config_error);
    CHECK_THROWS_AS(BogoliubovParams{-1.0}.validate(), config_error);
    for (double g = -kPi / 4.0 + 0.01; g < kPi / 4.0; g += 0.02) {
        const double b = BogoliubovParams{g}.beta();
        const double c = std::cos(g), s = std::sin(g);
        CHECK_THAT(b * b * (c * c - s * s), Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("bogoliubov transformation of ladder operators") {
    const int levels = 40;
    const SparseOperator a = annihilation_matrix(levels);
    const SparseOperator adag = a.adjoint();

    SECTION("gamma = 0 is the identity transform") {
        const auto [c, cdag] = bogoliubov_apply(a, adag, BogoliubovParams{0.0});
        CHECK(c == a);
        CHECK(cdag == adag);
    }
    SECTION("commutation relation is maintained away from the cutoff") {
        for (double g : {0.05, 0.2, 0.5, -0.3}) {
            const auto [c, cdag] = bogoliubov_apply(a, adag, BogoliubovParams{g});
            const SparseOperator com = commutator(c, cdag);
            CHECK_THAT(std::abs(com.entry(0, 0) - cd(1.0, 0.0)),
                       Catch::Matchers::WithinAbs(0.0, 1e-10));
            // the printed c'^dag is the true adjoint for real gamma
            CHECK((cdag - c.adjoint()).max_abs() < 1e-15);
        }
    }
    SECTION("mixing is linear in the inputs") {
        const double g = 0.3;
        const BogoliubovParams p{g};
        const auto [c, cdag] = bogoliubov_apply(a, adag, p);
        const double b = p.beta();
        const SparseOperator want =
            a.scaled(cd(b * std::cos(g), 0.0)).add_scaled(adag, cd(b * std::sin(g), 0.0));
        CHECK((c - want).max_abs() == 0.0);
    }
}

TEST_CASE("mixing angle closed form") {
    MassiveCouplingConfig cfg;
    cfg.epsilon = 0.0;
    CHECK(gamma_closed_form(cfg) == 0.0);
    cfg.epsilon = 0.05;
    cfg.omega = 1.0;
    cfg.Omega = 50.0;
    CHECK_THAT(gamma_closed_form(cfg), Catch::Matchers::WithinRel(5e-5, 1e-12));
    MassiveCouplingConfig doubled = cfg;
    doubled.epsilon = 0.1;
    CHECK_THAT(gamma_closed_form(doubled), Catch::Matchers::WithinRel(4.0 * gamma_closed_form(cfg), 1e-12));
    MassiveCouplingConfig bad = cfg;
    bad.Omega = 5.0;
    CHECK_THROWS_AS(gamma_closed_form(bad), config_error);
}

TEST_CASE("exact diagonalization verifies the closed form") {
    SECTION("decoupled oscillators have no pair amplitude") {
        MassiveCouplingConfig cfg;
        cfg.epsilon = 0.0;
        CHECK_THAT(gamma_numerical_oracle(cfg), Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
    SECTION("reference point within ten percent") {
        MassiveCouplingConfig cfg;  // eps 0.05, omega 1, Omega 50, cutoffs (20, 6)
        const double est = gamma_numerical_oracle(cfg);
        CHECK_THAT(est, Catch::Matchers::WithinRel(5e-5, 0.10));
        CHECK(est > 0.0);
    }
    SECTION("closed-form law holds across the validity regime") {
        for (double Om : {25.0, 50.0, 100.0}) {
            for (double eps : {0.02, 0.05}) {
                MassiveCouplingConfig cfg;
                cfg.Omega = Om;
                cfg.epsilon = eps;
                const double est = gamma_numerical_oracle(cfg);
                const double closed = gamma_closed_form(cfg);
                CHECK_THAT(est / closed, Catch::Matchers::WithinAbs(1.0, 0.10));
            }
        }
    }
    SECTION("inverse scaling with the heavy mass") {
        MassiveCouplingConfig c50, c100;
        c100.Omega = 100.0;
        const double ratio = gamma_numerical_oracle(c100) / gamma_numerical_oracle(c50);
        CHECK_THAT(ratio / 0.5, Catch::Matchers::WithinAbs(1.0, 0.05));
    }
    SECTION("cutoff stability") {
        MassiveCouplingConfig a, b;
        b.cutoff_c = 30;
        const double ea = gamma_numerical_oracle(a);
        const double eb = gamma_numerical_oracle(b);
        CHECK(std::abs(eb / ea - 1.0) < 0.01);
    }
    SECTION("insufficient cutoffs are rejected") {
        MassiveCouplingConfig cfg;
        cfg.epsilon = 2.0;  // strong coupling pushes occupation to the boundary
        cfg.Omega = 10.0;
        cfg.cutoff_c = 4;
        cfg.cutoff_b = 2;
        CHECK_THROWS_AS(gamma_numerical_oracle(cfg), config_error);
    }
}

TEST_CASE("subharmonic kinematics") {
    ScatteringConfig cfg;
    cfg.omega = 1.0;
    cfg.mass_m = 0.0;
    CHECK(subharmonic_frequency(cfg) == 0.5);
    cfg.mass_m = 0.25;
    CHECK(subharmonic_frequency(cfg) == 0.25);  // omega/2 - m, linear
    // energies of Eq-(D5)-style bookkeeping close exactly at the returned omega'
    const double wp = subharmonic_frequency(cfg);
    const double e0 = 1.5 * cfg.omega + 0.5 * wp;
    const double ef = 0.5 * cfg.omega + 2.5 * wp + 2.0 * cfg.mass_m;
    CHECK(e0 == ef);
    cfg.mass_m = 0.5;
    CHECK_THROWS_AS(subharmonic_frequency(cfg), config_error);
    // monotone decreasing in the mass
    double prev = 1.0;
    for (double m : {0.0, 0.1, 0.2, 0.3, 0.4}) {
        ScatteringConfig c;
        c.mass_m = m;
        const double w = subharmonic_frequency(c);
        CHECK(w < prev);
        prev = w;
    }
}

TEST_CASE("dipole matrix elements") {
    ScatteringConfig cfg;
    cfg.gamma = 0.0;
    CHECK(std::abs(matrix_element_final(cfg)) == 0.0);
    cfg.gamma = 2e-3;
    const cd mi = matrix_element_initial(cfg);
    const cd mf = matrix_element_final(cfg);
    CHECK(mi.real() == 0.0);  // i omega q (...) d is purely imaginary
    const double want = 2.0 * std::sqrt(2.0) * cfg.gamma *
                        std::sqrt(cfg.omega / subharmonic_frequency(cfg));
    CHECK_THAT(std::abs(mf) / std::abs(mi), Catch::Matchers::WithinRel(want, 1e-12));

    ScatteringConfig big = cfg;
    big.length_L = 2.0 * cfg.length_L;
    const double scale = std::pow(2.0, -1.5);
    CHECK_THAT(std::abs(matrix_element_initial(big)) / std::abs(mi),
               Catch::Matchers::WithinRel(scale, 1e-12));
    CHECK_THAT(std::abs(matrix_element_final(big)) / std::abs(mf),
               Catch::Matchers::WithinRel(scale, 1e-12));
}

TEST_CASE("scattering rates") {
    ScatteringConfig cfg;
    cfg.omega = 1.0;
    cfg.detuning = 0.01;
    cfg.dipole_d = 0.7;
    cfg.length_L = 3.0;
    cfg.solid_angle = 2e-3;
    cfg.gamma = 1e-3;

    SECTION("the printed closed form equals the assembled second-order rate") {
        CHECK_THAT(subharmonic_rate_assembled(cfg) / subharmonic_rate(cfg),
                   Catch::Matchers::WithinAbs(1.0, 1e-10));
    }
    SECTION("vanishes without mixing") {
        ScatteringConfig c = cfg;
        c.gamma = 0.0;
        CHECK(subharmonic_rate(c) == 0.0);
    }
    SECTION("exact scaling laws") {
        const double base = subharmonic_rate(cfg);
        ScatteringConfig c = cfg;
        c.detuning = cfg.detuning / 2.0;
        CHECK_THAT(subharmonic_rate(c) / base, Catch::Matchers::WithinRel(4.0, 1e-12));
        c = cfg;
        c.gamma = 2.0 * cfg.gamma;
        CHECK_THAT(subharmonic_rate(c) / base, Catch::Matchers::WithinRel(4.0, 1e-12));
        c = cfg;
        c.dipole_d = 2.0 * cfg.dipole_d;
        CHECK_THAT(subharmonic_rate(c) / base, Catch::Matchers::WithinRel(16.0, 1e-12));
        c = cfg;
        c.length_L = 2.0 * cfg.length_L;
        CHECK_THAT(subharmonic_rate(c) / base, Catch::Matchers::WithinRel(0.125, 1e-12));
    }
    SECTION("zero detuning is rejected") {
        ScatteringConfig c = cfg;
        c.detuning = 0.0;
        CHECK_THROWS_AS(subharmonic_rate(c), config_error);
    }
}

TEST_CASE("rate ratio prediction") {
    CHECK(rate_ratio(0.0) == 0.0);
    CHECK_THAT(rate_ratio(0.01), Catch::Matchers::WithinRel(4e-4, 1e-15));
    CHECK(rate_ratio_small_angle(0.05));
    CHECK_FALSE(rate_ratio_small_angle(0.2));

    ScatteringConfig cfg;
    for (double g : {1e-4, 1e-3, 1e-2}) {
        cfg.gamma = g;
        CHECK_THAT(rate_ratio_pipeline(cfg) / rate_ratio(g), Catch::Matchers::WithinAbs(1.0, 1e-10));
    }
}
