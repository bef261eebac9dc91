#ifndef THIRDQ_RUNNER_HPP
#define THIRDQ_RUNNER_HPP

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "thirdq/config.hpp"
#include "thirdq/csv.hpp"
#include "thirdq/engine.hpp"
#include "thirdq/errors.hpp"
#include "thirdq/generalized.hpp"
#include "thirdq/oracle.hpp"
#include "thirdq/parallel.hpp"

namespace thirdq {

inline constexpr const char* kArtifactVersion = "0.1.0";

namespace detail {

using nlohmann::json;

inline json echo_config(const RunConfig& c) {
    json j;
    j["run"]["experiment"] = to_string(c.experiment);
    j["run"]["output_dir"] = c.output_dir;
    j["run"]["sample_times"] = c.resolved_sample_times();
    j["engine"] = {{"omega_j", c.engine.omega_j}, {"omega_k", c.engine.omega_k},
                   {"epsilon", c.engine.epsilon}, {"t_final", c.engine.t_final},
                   {"steps", c.engine.steps},     {"n_max", c.engine.n_max}};
    j["grid"] = {{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"n_points", c.grid.n_points}};
    for (const auto* s : {&c.state_j, &c.state_k}) {
        json js = {{"kind", s->kind}, {"alpha_re", s->alpha_re}, {"alpha_im", s->alpha_im}, {"theta", s->theta}};
        j[s == &c.state_j ? "state_j" : "state_k"] = js;
    }
    j["coherence"] = {{"auto_delta", c.coherence.auto_delta}, {"delta", c.coherence.delta},
                      {"theta_points", c.coherence.theta_points},
                      {"delta_min", c.coherence.delta_min}, {"delta_max", c.coherence.delta_max},
                      {"delta_points", c.coherence.delta_points}, {"alpha", c.coherence.alpha}};
    j["joint"] = {{"times", c.resolved_joint_times()}, {"stride", c.joint.stride}};
    j["wigner"] = {{"p_min", c.wigner.p_min}, {"p_max", c.wigner.p_max}, {"p_points", c.wigner.p_points}};
    j["scattering"] = {{"omega", c.scattering.point.omega},
                       {"detuning", c.scattering.point.detuning},
                       {"dipole_d", c.scattering.point.dipole_d},
                       {"L", c.scattering.point.length_L},
                       {"solid_angle", c.scattering.point.solid_angle},
                       {"alpha_fs", c.scattering.point.alpha_fs},
                       {"gamma", c.scattering.point.gamma},
                       {"mass_m", c.scattering.point.mass_m},
                       {"gamma_list", c.scattering.gamma_list},
                       {"detuning_list", c.scattering.detuning_list},
                       {"mass_list", c.scattering.mass_list}};
    j["gamma_oracle"] = {{"omega", c.gamma_oracle.omega}, {"Omega_list", c.gamma_oracle.Omega_list},
                         {"epsilon_list", c.gamma_oracle.epsilon_list},
                         {"cutoff_c", c.gamma_oracle.cutoff_c}, {"cutoff_b", c.gamma_oracle.cutoff_b}};
    j["units"] = {{"mode", c.units.mode}};
    return j;
}

inline double peak_rss_mb() {
    struct rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return static_cast<double>(ru.ru_maxrss) / 1024.0;  // ru_maxrss is KiB on Linux
}

/// Natural units use hbar = c = 1 with energies in units of 1 eV. SI-mode
/// scattering inputs (omega in rad/s, energies in J, lengths in m) are
/// converted here; the factors are recorded in the manifest.
struct UnitConversion {
    ScatteringConfig natural;
    json factors;
};

inline UnitConversion scattering_units(const ScatteringConfig& in, const UnitsConfig& units) {
    UnitConversion out;
    if (units.mode == "natural") {
        out.natural = in;
        out.factors = {{"mode", "natural"}, {"note", "inputs taken as hbar = c = 1 quantities"}};
        return out;
    }
    const double ev = 1.602176634e-19;        // J
    const double hbar = 1.054571817e-34;      // J s
    const double c_light = 299792458.0;       // m/s
    const double length0 = hbar * c_light / ev;  // m per natural length unit
    out.natural = in;
    out.natural.omega = hbar * in.omega / ev;
    out.natural.detuning = in.detuning / ev;
    out.natural.dipole_d = in.dipole_d / length0;
    out.natural.length_L = in.length_L / length0;
    out.natural.mass_m = in.mass_m / ev;
    out.factors = {{"mode", "si"},
                   {"energy_unit_J", ev},
                   {"length_unit_m", length0},
                   {"rate_unit_per_s", ev / hbar},
                   {"omega_in", "rad/s"},
                   {"detuning_in", "J"},
                   {"dipole_in", "m"},
                   {"L_in", "m"},
                   {"mass_in", "J"}};
    return out;
}

} // namespace detail

/// Executes one configured experiment. Output files land in cfg.output_dir;
/// the manifest is written last as the completion marker. Throws config_error,
/// numerical_error, or io_error; the CLI maps those to exit codes.
class Runner {
public:
    explicit Runner(RunConfig cfg) : cfg_(std::move(cfg)) {}

    std::string run() {
        cfg_.validate();
        const bool uses_grid = cfg_.experiment != Experiment::scattering &&
                               cfg_.experiment != Experiment::gamma_oracle;
        if (uses_grid && !cfg_.grid.covers(cfg_.engine.n_max))
            throw config_error("grid [" + std::to_string(cfg_.grid.x_min) + ", " +
                               std::to_string(cfg_.grid.x_max) + "] does not cover +/-" +
                               std::to_string(QuadGrid::required_halfspan(cfg_.engine.n_max)) +
                               " required for n_max = " + std::to_string(cfg_.engine.n_max));
        const auto t0 = std::chrono::steady_clock::now();
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(cfg_.output_dir, ec);
        if (ec) throw io_error("cannot create output directory '" + cfg_.output_dir + "': " + ec.message());
        if (!fs::is_directory(cfg_.output_dir))
            throw io_error("output path '" + cfg_.output_dir + "' is not a directory");

        manifest_ = nlohmann::json::object();
        manifest_["artifact_version"] = kArtifactVersion;
        manifest_["experiment"] = to_string(cfg_.experiment);
        manifest_["config"] = detail::echo_config(cfg_);
        const JointHyperBasis basis(cfg_.engine.n_max);
        manifest_["basis"] = {{"mode_dim", basis.mode_j.dim()},
                              {"joint_dim", basis.joint_dim()},
                              {"operator_capacity", basis.joint_dim() * static_cast<long long>(basis.joint_dim())}};
        if (cfg_.engine.rwa_warning())
            warn("epsilon is not small against the mode frequencies; the rotating-wave form is strained");

        switch (cfg_.experiment) {
            case Experiment::evolve: run_evolve(); break;
            case Experiment::joint: run_joint(); break;
            case Experiment::coherence: run_coherence(); break;
            case Experiment::verify: run_verify(); break;
            case Experiment::wigner: run_wigner(); break;
            case Experiment::scattering: run_scattering(); break;
            case Experiment::gamma_oracle: run_gamma_oracle(); break;
        }

        const auto t1 = std::chrono::steady_clock::now();
        manifest_["wall_time_s"] = std::chrono::duration<double>(t1 - t0).count();
        manifest_["peak_rss_mb"] = detail::peak_rss_mb();
        manifest_["warnings"] = warnings_;
        nlohmann::json outs = nlohmann::json::array();
        for (const auto& f : files_)
            outs.push_back({{"file", std::filesystem::path(f.path).filename().string()},
                            {"rows", f.rows},
                            {"fnv1a64", f.digest}});
        manifest_["outputs"] = outs;
        const std::string manifest_path = out_path("manifest.json");
        std::ofstream mf(manifest_path, std::ios::binary | std::ios::trunc);
        if (!mf) throw io_error("cannot write " + manifest_path);
        mf << manifest_.dump(2) << "\n";
        mf.flush();
        if (!mf) throw io_error("write to " + manifest_path + " failed");
        return manifest_path;
    }

private:
    std::string out_path(const std::string& name) const {
        return (std::filesystem::path(cfg_.output_dir) / name).string();
    }

    void warn(const std::string& msg) { warnings_.push_back(msg); }

    void emit(const CsvTable& table, const std::string& name) {
        files_.push_back(emit_csv(table, out_path(name)));
    }

    struct Prepared {
        HyperStateVector psi0;
        AmplitudeList a_j;
        AmplitudeList a_k;
    };

    Prepared prepare_state(const JointHyperBasis& basis) {
        Prepared p;
        p.a_j = cfg_.state_j.build(basis.mode_j);
        p.a_k = cfg_.state_k.build(basis.mode_k);
        p.psi0 = tensor(p.a_j, p.a_k, basis);
        manifest_["diagnostics"]["tail_deficit_j"] = 1.0 - norm2(p.a_j);
        manifest_["diagnostics"]["tail_deficit_k"] = 1.0 - norm2(p.a_k);
        return p;
    }

    void run_evolve() {
        const std::vector<double> times = cfg_.resolved_sample_times();
        if (times.empty()) return;
        HeisenbergEngine engine(cfg_.engine);
        const Prepared st = prepare_state(engine.basis());
        CsvTable dj({"t", "x", "P"});
        CsvTable dk({"t", "x", "P"});
        CsvTable ex({"t", "oscillatons_j", "oscillatons_k", "photons_j", "photons_k", "mean_x_j", "mean_x_k"});
        double drift_osc = 0.0, drift_photon = 0.0;
        bool have_base = false;
        double base_oj = 0.0, base_ok = 0.0, base_photons = 0.0;
        engine.evolve_observe(times, [&](const EvolutionState& snap) {
            const std::vector<double> pj = density(snap, Mode::j, cfg_.grid, st.psi0);
            const std::vector<double> pk = density(snap, Mode::k, cfg_.grid, st.psi0);
            for (int i = 0; i < cfg_.grid.n_points; ++i) {
                dj.add_row({snap.t, cfg_.grid.point(i), pj[static_cast<std::size_t>(i)]});
                dk.add_row({snap.t, cfg_.grid.point(i), pk[static_cast<std::size_t>(i)]});
            }
            const ModeExpectations ej = mode_expectations(snap, Mode::j, st.psi0);
            const ModeExpectations ek = mode_expectations(snap, Mode::k, st.psi0);
            ex.add_row({snap.t, ej.oscillatons, ek.oscillatons, ej.photons, ek.photons, ej.mean_x, ek.mean_x});
            if (!have_base) {
                base_oj = ej.oscillatons;
                base_ok = ek.oscillatons;
                base_photons = ej.photons + ek.photons;
                have_base = true;
            }
            drift_osc = std::max({drift_osc, std::abs(ej.oscillatons - base_oj),
                                  std::abs(ek.oscillatons - base_ok)});
            drift_photon = std::max(drift_photon, std::abs(ej.photons + ek.photons - base_photons));
        });
        emit(dj, "density_j.csv");
        emit(dk, "density_k.csv");
        emit(ex, "expectations.csv");
        manifest_["diagnostics"]["oscillaton_drift"] = drift_osc;
        manifest_["diagnostics"]["photon_drift"] = drift_photon;
    }

    void run_joint() {
        const std::vector<double> times = cfg_.resolved_joint_times();
        if (times.empty()) return;
        HeisenbergEngine engine(cfg_.engine);
        const Prepared st = prepare_state(engine.basis());
        const int stride = cfg_.joint.stride;
        CsvTable table({"t", "xj", "xk", "P"});
        double worst_norm_dev = 0.0;
        engine.evolve_observe(times, [&](const EvolutionState& snap) {
            const JointDensity jd = joint_density(snap, cfg_.grid, cfg_.grid, st.psi0);
            for (int i = 0; i < cfg_.grid.n_points; i += stride)
                for (int j = 0; j < cfg_.grid.n_points; j += stride)
                    table.add_row({snap.t, cfg_.grid.point(i), cfg_.grid.point(j), jd.at(i, j)});
            // total probability over the full-resolution table
            std::vector<double> rows(static_cast<std::size_t>(cfg_.grid.n_points));
            std::vector<double> inner(static_cast<std::size_t>(cfg_.grid.n_points));
            for (int i = 0; i < cfg_.grid.n_points; ++i) {
                for (int j = 0; j < cfg_.grid.n_points; ++j)
                    inner[static_cast<std::size_t>(j)] = jd.at(i, j);
                rows[static_cast<std::size_t>(i)] = trapezoid(inner, cfg_.grid);
            }
            worst_norm_dev = std::max(worst_norm_dev, std::abs(trapezoid(rows, cfg_.grid) - 1.0));
        });
        emit(table, "joint.csv");
        manifest_["diagnostics"]["joint_normalization_dev"] = worst_norm_dev;
    }

    void run_coherence() {
        HeisenbergEngine engine(cfg_.engine);
        const JointHyperBasis& basis = engine.basis();
        manifest_["diagnostics"]["tail_deficit_j"] =
            1.0 - norm2(make_cat(cfg_.coherence.alpha, 0.0, basis.mode_j));
        const std::vector<double> thetas = cfg_.coherence.thetas();
        const std::vector<EvolutionState> snaps = engine.evolve({0.0, cfg_.engine.t_final});
        const char* names[2] = {"coherence_before.csv", "coherence_after.csv"};
        const char* keys[2] = {"before", "after"};
        for (std::size_t s = 0; s < snaps.size(); ++s) {
            double delta = cfg_.coherence.delta;
            double contrast = 0.0;
            if (cfg_.coherence.auto_delta) {
                const DeltaScan scan =
                    maximize_delta(snaps[s], basis, cfg_.grid, thetas, cfg_.coherence.alpha,
                                   cfg_.coherence.delta_min, cfg_.coherence.delta_max,
                                   cfg_.coherence.delta_points);
                delta = scan.delta;
                contrast = scan.contrast;
            }
            const std::vector<double> values =
                coherence_scan(snaps[s], basis, cfg_.grid, delta, thetas, cfg_.coherence.alpha);
            if (!cfg_.coherence.auto_delta) {
                const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
                contrast = *hi - *lo;
            }
            CsvTable table({"theta", "delta", "C"});
            for (std::size_t i = 0; i < thetas.size(); ++i)
                table.add_row({thetas[i], delta, values[i]});
            emit(table, names[s]);
            manifest_["diagnostics"]["delta_star"][keys[s]] = delta;
            manifest_["diagnostics"]["contrast"][keys[s]] = contrast;
        }
        // Field-amplitude reduction of the same cat state, for comparison with
        // the coherence contrast reduction.
        const HyperStateVector psi0 =
            tensor(make_cat(cfg_.coherence.alpha, 0.0, basis.mode_j), make_vacuum(basis.mode_k), basis);
        const double n0 = mode_expectations(snaps.front(), Mode::j, psi0).photons;
        const double n1 = mode_expectations(snaps.back(), Mode::j, psi0).photons;
        manifest_["diagnostics"]["field_amplitude_ratio"] = std::sqrt(n1 / n0);
    }

    void run_verify() {
        HeisenbergEngine engine(cfg_.engine);
        const JointHyperBasis& basis = engine.basis();
        const QuadGrid& grid = cfg_.grid;
        const double alpha = cfg_.coherence.alpha;

        std::vector<double> times = cfg_.resolved_sample_times();
        for (double t : cfg_.resolved_joint_times()) times.push_back(t);
        times.push_back(0.0);
        times.push_back(cfg_.engine.t_final);
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());

        const AmplitudeList coh = make_coherent(cd(alpha, 0.0), basis.mode_j);
        const AmplitudeList vac = make_vacuum(basis.mode_k);
        const AmplitudeList cat0 = make_cat(alpha, 0.0, basis.mode_j);
        const HyperStateVector psi_coh = tensor(coh, vac, basis);
        const HyperStateVector psi_cat = tensor(cat0, vac, basis);
        const FockStateVector fock_coh = fock_product(coh, vac);
        const FockStateVector fock_cat = fock_product(cat0, vac);
        manifest_["diagnostics"]["tail_deficit_j"] = 1.0 - norm2(coh);
        manifest_["diagnostics"]["tail_deficit_k"] = 1.0 - norm2(vac);

        const OracleEvolver oracle(cfg_.engine.n_max, cfg_.engine.epsilon, cfg_.engine.omega_j,
                                   cfg_.engine.omega_k);

        double dev_density_j = 0.0, dev_density_k = 0.0, dev_joint = 0.0, dev_coherence = 0.0;
        double drift_osc = 0.0, drift_photon = 0.0;
        bool have_base = false;
        double base_oj = 0.0, base_ok = 0.0, base_photons = 0.0;
        const std::vector<double> joint_times = cfg_.resolved_joint_times();
        const std::vector<double> thetas = cfg_.coherence.thetas();

        engine.evolve_observe(times, [&](const EvolutionState& snap) {
            const FockStateVector ocoh = oracle.evolve(fock_coh, snap.t);
            const std::vector<double> ej = density(snap, Mode::j, grid, psi_coh);
            const std::vector<double> ek = density(snap, Mode::k, grid, psi_coh);
            const std::vector<double> oj = oracle_density(ocoh, Mode::j, grid);
            const std::vector<double> ok = oracle_density(ocoh, Mode::k, grid);
            for (int i = 0; i < grid.n_points; ++i) {
                dev_density_j = std::max(dev_density_j,
                                         std::abs(ej[static_cast<std::size_t>(i)] - oj[static_cast<std::size_t>(i)]));
                dev_density_k = std::max(dev_density_k,
                                         std::abs(ek[static_cast<std::size_t>(i)] - ok[static_cast<std::size_t>(i)]));
            }
            const ModeExpectations mj = mode_expectations(snap, Mode::j, psi_coh);
            const ModeExpectations mk = mode_expectations(snap, Mode::k, psi_coh);
            if (!have_base) {
                base_oj = mj.oscillatons;
                base_ok = mk.oscillatons;
                base_photons = mj.photons + mk.photons;
                have_base = true;
            }
            drift_osc = std::max({drift_osc, std::abs(mj.oscillatons - base_oj),
                                  std::abs(mk.oscillatons - base_ok)});
            drift_photon = std::max(drift_photon, std::abs(mj.photons + mk.photons - base_photons));

            if (std::find(joint_times.begin(), joint_times.end(), snap.t) != joint_times.end()) {
                const FockStateVector ocat = oracle.evolve(fock_cat, snap.t);
                const JointDensity ejd = joint_density(snap, grid, grid, psi_cat);
                const JointDensity ojd = oracle_joint_density(ocat, grid, grid);
                for (std::size_t i = 0; i < ejd.p.size(); ++i)
                    dev_joint = std::max(dev_joint, std::abs(ejd.p[i] - ojd.p[i]));
            }
            if (snap.t == 0.0 || snap.t == cfg_.engine.t_final) {
                const DeltaScan scan = maximize_delta(snap, basis, grid, thetas, alpha,
                                                      cfg_.coherence.delta_min,
                                                      cfg_.coherence.delta_max,
                                                      cfg_.coherence.delta_points);
                const std::vector<double> eng =
                    coherence_scan(snap, basis, grid, scan.delta, thetas, alpha);
                for (std::size_t i = 0; i < thetas.size(); ++i) {
                    const HyperStateVector psi_th =
                        tensor(make_cat(alpha, thetas[i], basis.mode_j), vac, basis);
                    const FockStateVector oth =
                        oracle.evolve(fock_product(make_cat(alpha, thetas[i], basis.mode_j), vac), snap.t);
                    const double oval = oracle_coherence(oth, Mode::j, 0.0, scan.delta);
                    dev_coherence = std::max(dev_coherence, std::abs(eng[i] - oval));
                    (void)psi_th;
                }
            }
        });

        CsvTable report({"observable", "max_abs_dev", "tolerance", "pass"});
        const auto add = [&report](const std::string& name, double dev, double tol) {
            report.add_row({name, dev, tol, static_cast<long long>(dev <= tol ? 1 : 0)});
        };
        add("density_j", dev_density_j, 1e-6);
        add("density_k", dev_density_k, 1e-6);
        add("joint_density", dev_joint, 1e-6);
        add("coherence_scan", dev_coherence, 1e-6);
        add("oscillaton_number_drift", drift_osc, 1e-8);
        add("total_photon_drift", drift_photon, 1e-8);
        emit(report, "report.csv");
        manifest_["diagnostics"]["max_abs_dev"] = {{"density_j", dev_density_j},
                                                   {"density_k", dev_density_k},
                                                   {"joint_density", dev_joint},
                                                   {"coherence_scan", dev_coherence}};
        manifest_["diagnostics"]["oscillaton_drift"] = drift_osc;
        manifest_["diagnostics"]["photon_drift"] = drift_photon;
    }

    void run_wigner() {
        const JointHyperBasis basis(cfg_.engine.n_max);
        const AmplitudeList a_j = cfg_.state_j.build(basis.mode_j);
        if (std::abs(a_j[ModeBasis::z_slot]) != 0.0)
            throw config_error("wigner: the zero-oscillaton state has no quadrature wave function");
        std::vector<cd> fock(a_j.begin() + 1, a_j.end());
        const QuadGrid pgrid = cfg_.wigner.p_grid();
        const WignerTable wt = wigner(fock, cfg_.grid, pgrid);
        CsvTable table({"x", "p", "W"});
        for (int i = 0; i < cfg_.grid.n_points; ++i)
            for (int j = 0; j < pgrid.n_points; ++j)
                table.add_row({cfg_.grid.point(i), pgrid.point(j), wt.at(i, j)});
        emit(table, "wigner.csv");
        // Normalization and marginal diagnostics
        std::vector<double> col(static_cast<std::size_t>(pgrid.n_points));
        std::vector<double> marg(static_cast<std::size_t>(cfg_.grid.n_points));
        double min_w = 0.0;
        for (int i = 0; i < cfg_.grid.n_points; ++i) {
            for (int j = 0; j < pgrid.n_points; ++j) {
                col[static_cast<std::size_t>(j)] = wt.at(i, j);
                min_w = std::min(min_w, wt.at(i, j));
            }
            marg[static_cast<std::size_t>(i)] = trapezoid(col, pgrid);
        }
        manifest_["diagnostics"]["total_integral"] = trapezoid(marg, cfg_.grid);
        manifest_["diagnostics"]["min_value"] = min_w;
    }

    void run_scattering() {
        const detail::UnitConversion conv = detail::scattering_units(cfg_.scattering.point, cfg_.units);
        manifest_["units"] = conv.factors;
        const ScatteringConfig& base = conv.natural;
        base.validate();

        CsvTable point({"omega", "detuning", "dipole_d", "L", "solid_angle", "alpha_fs", "gamma",
                        "mass_m", "omega_prime", "Gamma_subharmonic", "Gamma_subharmonic_assembled",
                        "Gamma_elastic", "R_closed_form", "R_pipeline"});
        point.add_row({base.omega, base.detuning, base.dipole_d, base.length_L, base.solid_angle,
                       base.alpha_fs, base.gamma, base.mass_m, subharmonic_frequency(base),
                       subharmonic_rate(base), subharmonic_rate_assembled(base), elastic_rate(base),
                       rate_ratio(base.gamma), rate_ratio_pipeline(base)});
        emit(point, "point.csv");

        CsvTable ratio({"gamma", "R_closed_form", "R_pipeline"});
        for (double g : cfg_.scattering.gamma_list) {
            ScatteringConfig c = base;
            c.gamma = g;
            if (!rate_ratio_small_angle(g)) warn("gamma " + format_double(g) + " is outside the small-angle regime");
            ratio.add_row({g, rate_ratio(g), rate_ratio_pipeline(c)});
        }
        emit(ratio, "ratio_vs_gamma.csv");

        CsvTable rates({"detuning", "Gamma"});
        for (double d : cfg_.scattering.detuning_list) {
            ScatteringConfig c = base;
            c.detuning = d;
            rates.add_row({d, subharmonic_rate(c)});
        }
        emit(rates, "rate_vs_detuning.csv");

        CsvTable freq({"mass", "omega_prime"});
        for (double mvalue : cfg_.scattering.mass_list) {
            ScatteringConfig c = base;
            c.mass_m = mvalue;
            freq.add_row({mvalue, subharmonic_frequency(c)});
        }
        emit(freq, "frequency_vs_mass.csv");
        if (base.detuning_warning())
            warn("detuning is not small against omega; the near-resonance approximation is strained");
    }

    void run_gamma_oracle() {
        CsvTable table({"omega", "Omega", "epsilon", "gamma_closed_form", "gamma_oracle", "ratio"});
        for (double Om : cfg_.gamma_oracle.Omega_list) {
            for (double eps : cfg_.gamma_oracle.epsilon_list) {
                MassiveCouplingConfig mc;
                mc.omega = cfg_.gamma_oracle.omega;
                mc.Omega = Om;
                mc.epsilon = eps;
                mc.cutoff_c = cfg_.gamma_oracle.cutoff_c;
                mc.cutoff_b = cfg_.gamma_oracle.cutoff_b;
                if (mc.hierarchy_warning())
                    warn("Omega/omega below 25: closed form accurate only to O(omega/Omega)");
                const double closed = gamma_closed_form(mc);
                const double est = gamma_numerical_oracle(mc);
                table.add_row({mc.omega, Om, eps, closed, est, est / closed});
            }
        }
        emit(table, "gamma_oracle.csv");
    }

    RunConfig cfg_;
    nlohmann::json manifest_;
    std::vector<EmittedFile> files_;
    std::vector<std::string> warnings_;
};

inline std::string run(const RunConfig& cfg) { return Runner(cfg).run(); }

} // namespace thirdq

#endif
