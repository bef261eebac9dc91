#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "thirdq/config.hpp"
#include "thirdq/csv.hpp"
#include "thirdq/runner.hpp"

using namespace thirdq;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    fs::path p = fs::temp_directory_path() /
                 ("thirdq_" + tag + "_" + std::to_string(stamp) + "_" + std::to_string(counter++));
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Small fast configuration shared by the runner tests.
RunConfig tiny_config() {
    RunConfig cfg;
    cfg.engine.n_max = 8;
    cfg.engine.t_final = 1.0;
    cfg.engine.steps = 50;
    cfg.grid = QuadGrid{-9.0, 9.0, 91};
    cfg.sample_times = std::vector<double>{0.0, 0.5, 1.0};
    cfg.state_j = StateSpec{"coherent", 1.5, 0.0, 0.0};
    return cfg;
}

}  // namespace

TEST_CASE("double formatting is round-trip exact") {
    for (double v : {0.1, 1.0 / 3.0, -2.7182818284590452, 1e-300, 6.02214076e23, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
        CHECK(s.find(',') == std::string::npos);
        CHECK(s.find('e') != std::string::npos);  // scientific notation
    }
}

TEST_CASE("csv table layout") {
    CsvTable t({"a", "b", "c"});
    t.add_row({1.0, static_cast<long long>(2), std::string("x")});
    const std::string body = t.to_string();
    CHECK(body.substr(0, 6) == "a,b,c\n");
    CHECK(body.back() == '\n');
    CHECK(body.find("\r") == std::string::npos);
    CHECK_THROWS_AS(t.add_row({1.0}), std::domain_error);
}

TEST_CASE("fnv1a64 digest reference values") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("strict config parsing") {
    RunConfig cfg;
    SECTION("valid text applies values") {
        parse_config_text(cfg,
                          "[run]\n"
                          "experiment = coherence\n"
                          "sample_times = 0, 0.5, 1\n"
                          "# a comment line\n"
                          "[engine]\n"
                          "epsilon = 0.2  ; trailing comment\n"
                          "steps = 600\n"
                          "[state_j]\n"
                          "kind = cat\n"
                          "theta = 1.5\n",
                          "inline");
        CHECK(cfg.experiment == Experiment::coherence);
        CHECK(cfg.engine.epsilon == 0.2);
        CHECK(cfg.engine.steps == 600);
        CHECK(cfg.state_j.kind == "cat");
        REQUIRE(cfg.sample_times.has_value());
        CHECK(cfg.sample_times->size() == 3);
    }
    SECTION("unknown keys are rejected with the line number") {
        try {
            parse_config_text(cfg, "[engine]\nepsilon = 0.1\nbogus = 3\n", "f.cfg");
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("f.cfg:3") != std::string::npos);
            CHECK(std::string(e.what()).find("bogus") != std::string::npos);
        }
    }
    SECTION("unknown sections, malformed lines, bad numbers") {
        CHECK_THROWS_AS(parse_config_text(cfg, "[nosuch]\nx = 1\n", "t"), config_error);
        CHECK_THROWS_AS(parse_config_text(cfg, "[run\n", "t"), config_error);
        CHECK_THROWS_AS(parse_config_text(cfg, "key = 1\n", "t"), config_error);
        CHECK_THROWS_AS(parse_config_text(cfg, "[engine]\nepsilon = fast\n", "t"), config_error);
        CHECK_THROWS_AS(parse_config_text(cfg, "[engine]\nsteps = 1.5\n", "t"), config_error);
    }
    SECTION("set overrides") {
        apply_override(cfg, "engine.n_max=12");
        CHECK(cfg.engine.n_max == 12);
        apply_override(cfg, "coherence.delta=1.25");
        CHECK_FALSE(cfg.coherence.auto_delta);
        CHECK(cfg.coherence.delta == 1.25);
        apply_override(cfg, "coherence.delta=auto");
        CHECK(cfg.coherence.auto_delta);
        CHECK_THROWS_AS(apply_override(cfg, "no_equals"), config_error);
        CHECK_THROWS_AS(apply_override(cfg, "engine.unknown=1"), config_error);
    }
    SECTION("empty sample list means a vacuous run") {
        parse_config_text(cfg, "[run]\nsample_times =\n", "t");
        REQUIRE(cfg.sample_times.has_value());
        CHECK(cfg.sample_times->empty());
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(parse_config_file(cfg, "/nonexistent/path.cfg"), config_error);
    }
}

TEST_CASE("evolve run emits files and a manifest") {
    RunConfig cfg = tiny_config();
    const fs::path dir = fresh_dir("evolve");
    cfg.output_dir = dir.string();
    const std::string manifest_path = run(cfg);
    CHECK(fs::exists(dir / "density_j.csv"));
    CHECK(fs::exists(dir / "density_k.csv"));
    CHECK(fs::exists(dir / "expectations.csv"));
    REQUIRE(fs::exists(manifest_path));

    const std::string manifest = slurp(manifest_path);
    auto j = nlohmann::json::parse(manifest);
    CHECK(j["basis"]["mode_dim"] == 10);
    CHECK(j["basis"]["joint_dim"] == 100);
    CHECK(j["experiment"] == "evolve");
    CHECK(j["diagnostics"]["oscillaton_drift"].get<double>() < 1e-8);
    // every output is listed with a digest that matches the file content
    for (const auto& out : j["outputs"]) {
        const fs::path p = dir / out["file"].get<std::string>();
        REQUIRE(fs::exists(p));
        CHECK(fnv1a64_hex(slurp(p)) == out["fnv1a64"].get<std::string>());
    }
    // header schema
    CHECK(slurp(dir / "density_j.csv").substr(0, 6) == "t,x,P\n");
    fs::remove_all(dir);
}

TEST_CASE("vacuous run emits only the manifest") {
    RunConfig cfg = tiny_config();
    cfg.sample_times = std::vector<double>{};
    const fs::path dir = fresh_dir("vacuous");
    cfg.output_dir = dir.string();
    run(cfg);
    int files = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        ++files;
        CHECK(e.path().filename() == "manifest.json");
    }
    CHECK(files == 1);
    fs::remove_all(dir);
}

TEST_CASE("runs are byte-identical") {
    RunConfig cfg = tiny_config();
    const fs::path d1 = fresh_dir("det1");
    const fs::path d2 = fresh_dir("det2");
    cfg.output_dir = d1.string();
    run(cfg);
    cfg.output_dir = d2.string();
    run(cfg);
    for (const char* name : {"density_j.csv", "density_k.csv", "expectations.csv"})
        CHECK(slurp(d1 / name) == slurp(d2 / name));
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("coherence run reports the maximizing delta") {
    RunConfig cfg = tiny_config();
    cfg.experiment = Experiment::coherence;
    cfg.engine.t_final = 0.5;
    cfg.engine.steps = 25;
    cfg.engine.n_max = 16;
    cfg.coherence.theta_points = 9;
    cfg.coherence.delta_points = 40;
    const fs::path dir = fresh_dir("coh");
    cfg.output_dir = dir.string();
    run(cfg);
    CHECK(slurp(dir / "coherence_before.csv").substr(0, 14) == "theta,delta,C\n");
    CHECK(fs::exists(dir / "coherence_after.csv"));
    auto j = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK_THAT(j["diagnostics"]["delta_star"]["before"].get<double>(),
               Catch::Matchers::WithinAbs(2.0 * std::sqrt(2.0), 0.1));
    fs::remove_all(dir);
}

TEST_CASE("scattering run emits the sweep tables") {
    RunConfig cfg;
    cfg.experiment = Experiment::scattering;
    const fs::path dir = fresh_dir("scat");
    cfg.output_dir = dir.string();
    run(cfg);
    CHECK(slurp(dir / "ratio_vs_gamma.csv").substr(0, 31) == "gamma,R_closed_form,R_pipeline\n");
    CHECK(slurp(dir / "rate_vs_detuning.csv").substr(0, 15) == "detuning,Gamma\n");
    CHECK(slurp(dir / "frequency_vs_mass.csv").substr(0, 17) == "mass,omega_prime\n");
    CHECK(fs::exists(dir / "point.csv"));
    fs::remove_all(dir);
}

TEST_CASE("gamma oracle run tabulates the comparison") {
    RunConfig cfg;
    cfg.experiment = Experiment::gamma_oracle;
    cfg.gamma_oracle.Omega_list = {50.0};
    cfg.gamma_oracle.epsilon_list = {0.05};
    const fs::path dir = fresh_dir("gosc");
    cfg.output_dir = dir.string();
    run(cfg);
    const std::string body = slurp(dir / "gamma_oracle.csv");
    CHECK(body.substr(0, 57) == "omega,Omega,epsilon,gamma_closed_form,gamma_oracle,ratio\n");
    fs::remove_all(dir);
}

TEST_CASE("si units are converted and logged") {
    RunConfig cfg;
    cfg.experiment = Experiment::scattering;
    cfg.units.mode = "si";
    // 1 eV photon: omega = E/hbar
    cfg.scattering.point.omega = 1.602176634e-19 / 1.054571817e-34;
    cfg.scattering.point.detuning = 0.01 * 1.602176634e-19;
    cfg.scattering.point.dipole_d = 1.97326980e-7;  // one natural length unit
    cfg.scattering.point.length_L = 1.97326980e-7;
    cfg.scattering.point.mass_m = 0.0;
    const fs::path dir = fresh_dir("si");
    cfg.output_dir = dir.string();
    run(cfg);
    auto j = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(j["units"]["mode"] == "si");
    CHECK(j["units"].contains("rate_unit_per_s"));
    // converted omega is 1 (energy = 1 eV in eV units)
    const std::string point = slurp(dir / "point.csv");
    CHECK(point.find("1.0000000000000") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("error classification") {
    SECTION("numerical blow-up") {
        RunConfig cfg = tiny_config();
        cfg.engine.epsilon = 1e9;
        cfg.engine.steps = 1;
        cfg.engine.t_final = 10.0;
        cfg.sample_times = std::vector<double>{10.0};
        cfg.output_dir = fresh_dir("blow").string();
        CHECK_THROWS_AS(run(cfg), numerical_error);
        fs::remove_all(cfg.output_dir);
    }
    SECTION("unwritable output directory") {
        RunConfig cfg = tiny_config();
        const fs::path dir = fresh_dir("io");
        std::ofstream(dir / "blocker").put('x');
        cfg.output_dir = (dir / "blocker" / "sub").string();
        CHECK_THROWS_AS(run(cfg), io_error);
        fs::remove_all(dir);
    }
    SECTION("invalid configuration") {
        RunConfig cfg = tiny_config();
        cfg.engine.steps = 0;
        CHECK_THROWS_AS(run(cfg), config_error);
    }
    SECTION("grid too small for the cutoff") {
        RunConfig cfg = tiny_config();
        cfg.grid = QuadGrid{-4.0, 4.0, 81};  // covers nothing beyond n_max ~ 1
        cfg.output_dir = fresh_dir("cover").string();
        CHECK_THROWS_AS(run(cfg), config_error);
        fs::remove_all(cfg.output_dir);
    }
}
