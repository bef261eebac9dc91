#ifndef THIRDQ_CONFIG_HPP
#define THIRDQ_CONFIG_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "thirdq/basis.hpp"
#include "thirdq/engine.hpp"
#include "thirdq/errors.hpp"
#include "thirdq/generalized.hpp"
#include "thirdq/grid.hpp"
#include "thirdq/states.hpp"

namespace thirdq {

enum class Experiment { evolve, joint, coherence, verify, wigner, scattering, gamma_oracle };

inline Experiment experiment_from_string(const std::string& s) {
    if (s == "evolve") return Experiment::evolve;
    if (s == "joint") return Experiment::joint;
    if (s == "coherence") return Experiment::coherence;
    if (s == "verify") return Experiment::verify;
    if (s == "wigner") return Experiment::wigner;
    if (s == "scattering") return Experiment::scattering;
    if (s == "gamma-oracle") return Experiment::gamma_oracle;
    throw config_error("unknown experiment '" + s + "'");
}

inline std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::evolve: return "evolve";
        case Experiment::joint: return "joint";
        case Experiment::coherence: return "coherence";
        case Experiment::verify: return "verify";
        case Experiment::wigner: return "wigner";
        case Experiment::scattering: return "scattering";
        case Experiment::gamma_oracle: return "gamma-oracle";
    }
    return "?";
}

/// Initial state selector for one mode.
struct StateSpec {
    std::string kind = "vacuum";  // vacuum | coherent | cat | zero
    double alpha_re = 2.0;
    double alpha_im = 0.0;
    double theta = 0.0;

    void validate() const {
        if (kind != "vacuum" && kind != "coherent" && kind != "cat" && kind != "zero")
            throw config_error("state kind must be one of vacuum|coherent|cat|zero, got '" + kind + "'");
        if (kind == "cat" && alpha_im != 0.0)
            throw config_error("cat states take a real alpha");
    }

    AmplitudeList build(const ModeBasis& basis) const {
        validate();
        if (kind == "vacuum") return make_vacuum(basis);
        if (kind == "coherent") return make_coherent(cd(alpha_re, alpha_im), basis);
        if (kind == "cat") return make_cat(alpha_re, theta, basis);
        return make_zero_oscillaton(basis);
    }
};

struct CoherenceRunConfig {
    double delta = 0.0;       // used when auto_delta is false
    bool auto_delta = true;   // scan for the contrast-maximizing delta
    int theta_points = 49;    // theta in [0, 2 pi]
    double delta_min = 0.1;
    double delta_max = 4.0;
    int delta_points = 79;
    double alpha = 2.0;

    std::vector<double> thetas() const {
        std::vector<double> t(static_cast<std::size_t>(theta_points));
        for (int i = 0; i < theta_points; ++i)
            t[static_cast<std::size_t>(i)] = 2.0 * kPi * i / (theta_points - 1);
        return t;
    }

    void validate() const {
        if (theta_points < 3) throw config_error("coherence.theta_points must be >= 3");
        if (delta_points < 1) throw config_error("coherence.delta_points must be >= 1");
        if (!(delta_min > 0.0) || !(delta_max > delta_min))
            throw config_error("coherence delta range must satisfy 0 < delta_min < delta_max");
    }
};

struct JointRunConfig {
    std::optional<std::vector<double>> times;  // defaults to {0, t_final}
    int stride = 4;                            // grid decimation for the emitted table

    void validate() const {
        if (stride < 1) throw config_error("joint.stride must be >= 1");
    }
};

struct WignerRunConfig {
    double p_min = -9.0;
    double p_max = 9.0;
    int p_points = 361;

    QuadGrid p_grid() const { return QuadGrid{p_min, p_max, p_points}; }

    void validate() const { p_grid().validate(); }
};

struct ScatteringRunConfig {
    ScatteringConfig point;
    std::vector<double> gamma_list = {1e-4, 1e-3, 1e-2};
    std::vector<double> detuning_list = {0.005, 0.01, 0.02, 0.04};
    std::vector<double> mass_list = {0.0, 0.1, 0.2, 0.3, 0.4};

    void validate() const {
        point.validate();
        if (gamma_list.empty() || detuning_list.empty() || mass_list.empty())
            throw config_error("scattering sweep lists must be nonempty");
    }
};

struct GammaOracleRunConfig {
    double omega = 1.0;
    std::vector<double> Omega_list = {25.0, 50.0, 100.0};
    std::vector<double> epsilon_list = {0.02, 0.05};
    int cutoff_c = 20;
    int cutoff_b = 6;

    void validate() const {
        if (Omega_list.empty() || epsilon_list.empty())
            throw config_error("gamma_oracle sweep lists must be nonempty");
    }
};

struct UnitsConfig {
    std::string mode = "natural";  // natural | si

    void validate() const {
        if (mode != "natural" && mode != "si")
            throw config_error("units.mode must be natural or si");
    }
};

struct RunConfig {
    Experiment experiment = Experiment::evolve;
    std::string output_dir = "out";
    std::optional<std::vector<double>> sample_times;  // defaults to 25 points over [0, t_final];
                                                      // an explicitly empty list is a vacuous run
    EngineConfig engine;
    StateSpec state_j{"coherent", 2.0, 0.0, 0.0};
    StateSpec state_k{"vacuum", 0.0, 0.0, 0.0};
    QuadGrid grid;
    CoherenceRunConfig coherence;
    JointRunConfig joint;
    WignerRunConfig wigner;
    ScatteringRunConfig scattering;
    GammaOracleRunConfig gamma_oracle;
    UnitsConfig units;

    std::vector<double> resolved_sample_times() const {
        if (sample_times.has_value()) return *sample_times;
        std::vector<double> t;
        const int samples = 25;
        for (int i = 0; i < samples; ++i) t.push_back(engine.t_final * i / (samples - 1));
        return t;
    }

    std::vector<double> resolved_joint_times() const {
        if (joint.times.has_value()) return *joint.times;
        return {0.0, engine.t_final};
    }

    void validate() const {
        engine.validate();
        grid.validate();
        state_j.validate();
        state_k.validate();
        coherence.validate();
        joint.validate();
        wigner.validate();
        scattering.validate();
        gamma_oracle.validate();
        units.validate();
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_double(const std::string& s, const std::string& where) {
    const std::string t = trim(s);
    try {
        std::size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw config_error(where + ": '" + t + "' is not a number");
    }
}

inline int parse_int(const std::string& s, const std::string& where) {
    const std::string t = trim(s);
    try {
        std::size_t pos = 0;
        const int v = std::stoi(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw config_error(where + ": '" + t + "' is not an integer");
    }
}

inline std::vector<double> parse_double_list(const std::string& s, const std::string& where) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(parse_double(item, where));
    }
    if (out.empty()) throw config_error(where + ": expected a comma-separated number list");
    return out;
}

inline bool parse_bool(const std::string& s, const std::string& where) {
    const std::string t = trim(s);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw config_error(where + ": '" + t + "' is not a boolean");
}

using Setter = std::function<void(RunConfig&, const std::string& value, const std::string& where)>;

inline const std::map<std::string, Setter>& config_setters() {
    static const std::map<std::string, Setter> setters = [] {
        std::map<std::string, Setter> m;
        m["run.experiment"] = [](RunConfig& c, const std::string& v, const std::string&) {
            c.experiment = experiment_from_string(trim(v));
        };
        m["run.output_dir"] = [](RunConfig& c, const std::string& v, const std::string&) {
            c.output_dir = trim(v);
        };
        m["run.sample_times"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            if (trim(v).empty() || trim(v) == "none")
                c.sample_times = std::vector<double>{};
            else
                c.sample_times = parse_double_list(v, w);
        };
        m["grid.x_min"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.grid.x_min = parse_double(v, w);
        };
        m["grid.x_max"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.grid.x_max = parse_double(v, w);
        };
        m["grid.n_points"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.grid.n_points = parse_int(v, w);
        };
        m["engine.omega_j"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.engine.omega_j = parse_double(v, w);
        };
        m["engine.omega_k"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.engine.omega_k = parse_double(v, w);
        };
        m["engine.epsilon"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.engine.epsilon = parse_double(v, w);
        };
        m["engine.t_final"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.engine.t_final = parse_double(v, w);
        };
        m["engine.steps"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.engine.steps = parse_int(v, w);
        };
        m["engine.n_max"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.engine.n_max = parse_int(v, w);
        };
        for (const char* mode : {"state_j", "state_k"}) {
            const std::string prefix = mode;
            auto pick = [prefix](RunConfig& c) -> StateSpec& {
                return prefix == "state_j" ? c.state_j : c.state_k;
            };
            m[prefix + ".kind"] = [pick](RunConfig& c, const std::string& v, const std::string&) {
                pick(c).kind = trim(v);
            };
            m[prefix + ".alpha_re"] = [pick](RunConfig& c, const std::string& v, const std::string& w) {
                pick(c).alpha_re = parse_double(v, w);
            };
            m[prefix + ".alpha_im"] = [pick](RunConfig& c, const std::string& v, const std::string& w) {
                pick(c).alpha_im = parse_double(v, w);
            };
            m[prefix + ".theta"] = [pick](RunConfig& c, const std::string& v, const std::string& w) {
                pick(c).theta = parse_double(v, w);
            };
        }
        m["coherence.delta"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            if (trim(v) == "auto") {
                c.coherence.auto_delta = true;
            } else {
                c.coherence.auto_delta = false;
                c.coherence.delta = parse_double(v, w);
            }
        };
        m["coherence.theta_points"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.coherence.theta_points = parse_int(v, w);
        };
        m["coherence.delta_min"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.coherence.delta_min = parse_double(v, w);
        };
        m["coherence.delta_max"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.coherence.delta_max = parse_double(v, w);
        };
        m["coherence.delta_points"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.coherence.delta_points = parse_int(v, w);
        };
        m["coherence.alpha"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.coherence.alpha = parse_double(v, w);
        };
        m["joint.times"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            if (trim(v).empty() || trim(v) == "none")
                c.joint.times = std::vector<double>{};
            else
                c.joint.times = parse_double_list(v, w);
        };
        m["joint.stride"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.joint.stride = parse_int(v, w);
        };
        m["wigner.p_min"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.wigner.p_min = parse_double(v, w);
        };
        m["wigner.p_max"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.wigner.p_max = parse_double(v, w);
        };
        m["wigner.p_points"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.wigner.p_points = parse_int(v, w);
        };
        m["scattering.omega"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.point.omega = parse_double(v, w);
        };
        m["scattering.detuning"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.point.detuning = parse_double(v, w);
        };
        m["scattering.dipole_d"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.point.dipole_d = parse_double(v, w);
        };
        m["scattering.L"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.point.length_L = parse_double(v, w);
        };
        m["scattering.solid_angle"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.point.solid_angle = parse_double(v, w);
        };
        m["scattering.alpha_fs"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.point.alpha_fs = parse_double(v, w);
        };
        m["scattering.gamma"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.point.gamma = parse_double(v, w);
        };
        m["scattering.mass_m"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.point.mass_m = parse_double(v, w);
        };
        m["scattering.gamma_list"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.gamma_list = parse_double_list(v, w);
        };
        m["scattering.detuning_list"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.detuning_list = parse_double_list(v, w);
        };
        m["scattering.mass_list"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.scattering.mass_list = parse_double_list(v, w);
        };
        m["gamma_oracle.omega"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.gamma_oracle.omega = parse_double(v, w);
        };
        m["gamma_oracle.Omega_list"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.gamma_oracle.Omega_list = parse_double_list(v, w);
        };
        m["gamma_oracle.epsilon_list"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.gamma_oracle.epsilon_list = parse_double_list(v, w);
        };
        m["gamma_oracle.cutoff_c"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.gamma_oracle.cutoff_c = parse_int(v, w);
        };
        m["gamma_oracle.cutoff_b"] = [](RunConfig& c, const std::string& v, const std::string& w) {
            c.gamma_oracle.cutoff_b = parse_int(v, w);
        };
        m["units.mode"] = [](RunConfig& c, const std::string& v, const std::string&) {
            c.units.mode = trim(v);
        };
        return m;
    }();
    return setters;
}

} // namespace detail

/// Applies one "section.key=value" assignment; unknown keys are rejected.
inline void apply_config_value(RunConfig& cfg, const std::string& dotted_key,
                               const std::string& value, const std::string& where) {
    const auto& setters = detail::config_setters();
    const auto it = setters.find(dotted_key);
    if (it == setters.end()) throw config_error(where + ": unknown key '" + dotted_key + "'");
    it->second(cfg, value, where);
}

/// Strict section/key=value parser. Unknown sections or keys and malformed
/// lines abort with the offending line number.
inline void parse_config_text(RunConfig& cfg, const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno);
        std::string t = line;
        const std::size_t hash = t.find_first_of("#;");
        if (hash != std::string::npos) t = t.substr(0, hash);
        t = detail::trim(t);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw config_error(where + ": malformed section header");
            section = detail::trim(t.substr(1, t.size() - 2));
            if (section.empty()) throw config_error(where + ": empty section name");
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) throw config_error(where + ": expected key = value");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (key.empty()) throw config_error(where + ": empty key");
        if (section.empty()) throw config_error(where + ": key outside any [section]");
        apply_config_value(cfg, section + "." + key, value, where);
    }
}

inline void parse_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    parse_config_text(cfg, buf.str(), path);
}

/// Applies a --set override of the form section.key=value.
inline void apply_override(RunConfig& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw config_error("--set expects section.key=value, got '" + assignment + "'");
    const std::string key = detail::trim(assignment.substr(0, eq));
    const std::string value = detail::trim(assignment.substr(eq + 1));
    apply_config_value(cfg, key, value, "--set " + key);
}

} // namespace thirdq

#endif
