#include "chemsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "chemsim/common.hpp"

namespace chemsim::cli {

Grid GridSpec::make() const {
    std::vector<double> e(extent, extent + dim);
    std::vector<int> c(cells, cells + dim);
    return build_grid(dim, e, c);
}

namespace {

// section -> allowed keys
const std::map<std::string, std::vector<std::string>>& schema() {
    static const std::map<std::string, std::vector<std::string>> s = {
        {"run", {"preset", "formulation", "kernels", "safety", "dt_override",
                 "seed"}},
        {"grid", {"dim", "extent_x", "extent_y", "cells_x", "cells_y"}},
        {"params", {"chi", "kappa", "mu", "alpha", "eta"}},
        {"init_u", {"kind", "value", "amplitude", "width", "center_x",
                    "center_y", "mode_x", "mode_y", "noise"}},
        {"init_v", {"kind", "value", "amplitude", "width", "center_x",
                    "center_y", "mode_x", "mode_y", "noise"}},
        {"time", {"t_end", "cadence"}},
        {"monitors", {"enabled", "tol_hard", "tol_mass", "tol_window",
                      "tol_energy_endpoint", "tol_energy_ratio", "tol_decay",
                      "tol_lower", "tol_trend", "scheme_slack", "p_list",
                      "energy", "blowup_ceiling", "blowup_q", "oned_suite"}},
        {"output", {"series", "report", "dump_fields", "dump_every"}},
        {"sweep", {"chi", "mu", "kappa", "cap", "aggregate"}},
    };
    return s;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(c));
    return s;
}

using KvMap = std::map<std::string, std::map<std::string, std::string>>;

KvMap parse_ini(const std::string& text) {
    KvMap out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t cpos = line.find_first_of("#;");
        if (cpos != std::string::npos) line = line.substr(0, cpos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!schema().count(section))
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("config: key '" + key + "' outside any section");
        const auto& keys = schema().at(section);
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError("config: unknown key '" + key + "' in section [" +
                              section + "]");
        out[section][key] = val;
    }
    return out;
}

void apply_env_overrides(KvMap& kv) {
    for (const auto& [section, keys] : schema()) {
        for (const auto& key : keys) {
            const std::string name =
                "CHEMSIM_" + upper(section) + "__" + upper(key);
            if (const char* v = std::getenv(name.c_str()))
                kv[section][key] = v;
        }
    }
}

double to_double(const std::string& v, const std::string& what) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + what + "' is not a number: " + v);
    }
}

int to_int(const std::string& v, const std::string& what) {
    try {
        size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + what + "' is not an integer: " + v);
    }
}

bool to_bool(const std::string& v, const std::string& what) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config: '" + what + "' is not a boolean: " + v);
}

std::vector<double> to_list(const std::string& v, const std::string& what) {
    std::vector<double> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(item, what));
    }
    return out;
}

void apply_init(InitSpec& spec, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "kind") spec.kind = parse_init_kind(v).kind;
        else if (k == "value") spec.value = to_double(v, k);
        else if (k == "amplitude") spec.amplitude = to_double(v, k);
        else if (k == "width") spec.width = to_double(v, k);
        else if (k == "center_x") spec.center[0] = to_double(v, k);
        else if (k == "center_y") spec.center[1] = to_double(v, k);
        else if (k == "mode_x") spec.mode[0] = to_int(v, k);
        else if (k == "mode_y") spec.mode[1] = to_int(v, k);
        else if (k == "noise") spec.noise = to_double(v, k);
    }
}

void apply_map(RunConfig& c, const KvMap& kv) {
    if (auto it = kv.find("run"); it != kv.end()) {
        for (const auto& [k, v] : it->second) {
            if (k == "preset") continue;  // handled by the caller
            else if (k == "formulation") c.formulation = v;
            else if (k == "kernels") c.kernels = v;
            else if (k == "safety") c.safety = to_double(v, k);
            else if (k == "dt_override") c.dt_override = to_double(v, k);
            else if (k == "seed")
                c.seed = static_cast<unsigned long>(
                    std::strtoul(v.c_str(), nullptr, 10));
        }
    }
    if (auto it = kv.find("grid"); it != kv.end()) {
        for (const auto& [k, v] : it->second) {
            if (k == "dim") c.grid.dim = to_int(v, k);
            else if (k == "extent_x") c.grid.extent[0] = to_double(v, k);
            else if (k == "extent_y") c.grid.extent[1] = to_double(v, k);
            else if (k == "cells_x") c.grid.cells[0] = to_int(v, k);
            else if (k == "cells_y") c.grid.cells[1] = to_int(v, k);
        }
    }
    if (auto it = kv.find("params"); it != kv.end()) {
        for (const auto& [k, v] : it->second) {
            if (k == "chi") c.params.chi = to_double(v, k);
            else if (k == "kappa") c.params.kappa = to_double(v, k);
            else if (k == "mu") c.params.mu = to_double(v, k);
            else if (k == "alpha") c.params.alpha = to_double(v, k);
            else if (k == "eta") {
                if (v == "auto") c.eta_auto = true;
                else {
                    c.eta_auto = false;
                    c.params.eta = to_double(v, k);
                }
            }
        }
    }
    if (auto it = kv.find("init_u"); it != kv.end()) apply_init(c.u0, it->second);
    if (auto it = kv.find("init_v"); it != kv.end()) apply_init(c.v0, it->second);
    if (auto it = kv.find("time"); it != kv.end()) {
        for (const auto& [k, v] : it->second) {
            if (k == "t_end") c.t_end = to_double(v, k);
            else if (k == "cadence") c.cadence = to_double(v, k);
        }
    }
    if (auto it = kv.find("monitors"); it != kv.end()) {
        for (const auto& [k, v] : it->second) {
            if (k == "enabled") c.monitors_enabled = to_bool(v, k);
            else if (k == "tol_hard") c.mon.tol_hard = to_double(v, k);
            else if (k == "tol_mass") c.mon.tol_mass = to_double(v, k);
            else if (k == "tol_window") c.mon.tol_window = to_double(v, k);
            else if (k == "tol_energy_endpoint")
                c.mon.tol_energy_endpoint = to_double(v, k);
            else if (k == "tol_energy_ratio")
                c.mon.tol_energy_ratio = to_double(v, k);
            else if (k == "tol_decay") c.mon.tol_decay = to_double(v, k);
            else if (k == "tol_lower") c.mon.tol_lower = to_double(v, k);
            else if (k == "tol_trend") c.mon.tol_trend = to_double(v, k);
            else if (k == "scheme_slack") c.mon.scheme_slack = to_double(v, k);
            else if (k == "p_list") c.mon.p_list = to_list(v, k);
            else if (k == "energy") {
                if (v == "auto") {
                    c.mon.energy_enabled = true;
                    c.mon.energy_pr.reset();
                } else if (v == "off") {
                    c.mon.energy_enabled = false;
                } else {
                    const auto pr = to_list(v, k);
                    if (pr.size() != 2)
                        throw ConfigError("config: energy expects auto|off|p,r");
                    c.mon.energy_enabled = true;
                    c.mon.energy_pr = {pr[0], pr[1]};
                }
            } else if (k == "blowup_ceiling")
                c.mon.blowup_ceiling = to_double(v, k);
            else if (k == "blowup_q") c.mon.blowup_q = to_double(v, k);
            else if (k == "oned_suite") c.mon.oned_suite = to_bool(v, k);
        }
    }
    if (auto it = kv.find("output"); it != kv.end()) {
        for (const auto& [k, v] : it->second) {
            if (k == "series") c.write_series = to_bool(v, k);
            else if (k == "report") c.write_report = to_bool(v, k);
            else if (k == "dump_fields") c.dump_fields = to_bool(v, k);
            else if (k == "dump_every") c.dump_every = to_int(v, k);
        }
    }
}

std::string fmt_init(const InitSpec& s) {
    const char* kind = s.kind == InitSpec::Kind::constant ? "constant"
                       : s.kind == InitSpec::Kind::gaussian ? "gaussian"
                                                            : "cosine";
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%s value=%.17g amplitude=%.17g width=%.17g "
                  "center=%.17g,%.17g mode=%d,%d noise=%.17g",
                  kind, s.value, s.amplitude, s.width, s.center[0], s.center[1],
                  s.mode[0], s.mode[1], s.noise);
    return buf;
}

}  // namespace

void RunConfig::validate() const {
    if (formulation != "uv" && formulation != "uw" && formulation != "both")
        throw ConfigError("config: formulation must be uv|uw|both");
    if (kernels != "auto" && kernels != "scalar" && kernels != "avx2")
        throw ConfigError("config: kernels must be auto|scalar|avx2");
    if (!(t_end > 0.0)) throw ConfigError("config: t_end must be positive");
    if (!(cadence > 0.0)) throw ConfigError("config: cadence must be positive");
    if (monitors_enabled && cadence > 0.05 + 1e-12)
        throw ConfigError("config: window monitors require snapshot cadence "
                          "<= 0.05 time units");
    if (dump_every < 1) throw ConfigError("config: dump_every must be >= 1");
    if (u0.kind == InitSpec::Kind::gaussian && !(u0.width > 0.0))
        throw ConfigError("config: gaussian width must be positive");
    if (v0.kind == InitSpec::Kind::gaussian && !(v0.width > 0.0))
        throw ConfigError("config: gaussian width must be positive");
    // grid checked by build_grid; params checked by effective_params
    (void)grid.make();
    ModelParams check = params;
    if (eta_auto) check.eta = 1.0;  // placeholder; resolved against v0
    check.validate();
}

ModelParams RunConfig::effective_params(const Field& v0_field) const {
    ModelParams p = params;
    if (eta_auto) {
        double vmin = v0_field.values[0];
        for (double v : v0_field.values) vmin = std::min(vmin, v);
        p.eta = 1e-10 * vmin;
    }
    p.validate();
    return p;
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    char buf[256];
    os << "grid.dim=" << grid.dim << "\n";
    std::snprintf(buf, sizeof(buf), "grid.extent=%.17g,%.17g", grid.extent[0],
                  grid.dim == 2 ? grid.extent[1] : 0.0);
    os << buf << "\n";
    os << "grid.cells=" << grid.cells[0] << ","
       << (grid.dim == 2 ? grid.cells[1] : 0) << "\n";
    os << "init_u=" << fmt_init(u0) << "\n";
    os << "init_v=" << fmt_init(v0) << "\n";
    if (eta_auto) {
        std::snprintf(buf, sizeof(buf),
                      "params=chi:%.17g,kappa:%.17g,mu:%.17g,alpha:%.17g,"
                      "eta:auto",
                      params.chi, params.kappa, params.mu, params.alpha);
    } else {
        std::snprintf(buf, sizeof(buf),
                      "params=chi:%.17g,kappa:%.17g,mu:%.17g,alpha:%.17g,"
                      "eta:%.17g",
                      params.chi, params.kappa, params.mu, params.alpha,
                      params.eta);
    }
    os << buf << "\n";
    os << "run.formulation=" << formulation << "\n";
    std::snprintf(buf, sizeof(buf), "run.safety=%.17g", safety);
    os << buf << "\n";
    if (dt_override) {
        std::snprintf(buf, sizeof(buf), "run.dt_override=%.17g", *dt_override);
        os << buf << "\n";
    }
    os << "run.seed=" << seed << "\n";
    std::snprintf(buf, sizeof(buf), "time=%.17g,%.17g", t_end, cadence);
    os << buf << "\n";
    os << "monitors.enabled=" << (monitors_enabled ? 1 : 0) << "\n";
    std::snprintf(buf, sizeof(buf),
                  "monitors.tols=%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g",
                  mon.tol_hard, mon.tol_mass, mon.tol_window,
                  mon.tol_energy_endpoint, mon.tol_energy_ratio, mon.tol_decay,
                  mon.tol_lower, mon.tol_trend, mon.scheme_slack);
    os << buf << "\n";
    if (mon.energy_pr) {
        std::snprintf(buf, sizeof(buf), "monitors.energy=%.17g,%.17g",
                      mon.energy_pr->first, mon.energy_pr->second);
        os << buf << "\n";
    } else {
        os << "monitors.energy=" << (mon.energy_enabled ? "auto" : "off")
           << "\n";
    }
    return os.str();
}

std::string RunConfig::hash() const { return to_hex16(fnv1a64(canonical())); }

std::vector<std::string> preset_names() {
    return {"steady-decay", "2d-thm1", "1d-bounded", "1d-perturbed"};
}

RunConfig preset_config(const std::string& name) {
    RunConfig c;
    c.preset = name;
    if (name == "steady-decay") {
        // spatially homogeneous logistic equilibrium: u = kappa/mu, v0 = 1,
        // so the signal decays exactly like exp(-(kappa/mu) t)
        c.formulation = "uv";
        c.grid.dim = 1;
        c.grid.extent[0] = 1.0;
        c.grid.cells[0] = 128;
        c.params.chi = 0.5;
        c.params.kappa = 1.0;
        c.params.mu = 1.0;
        c.u0.kind = InitSpec::Kind::constant;
        c.u0.value = 1.0;
        c.v0.kind = InitSpec::Kind::constant;
        c.v0.value = 1.0;
        c.t_end = 5.0;
        c.cadence = 0.025;
    } else if (name == "2d-thm1") {
        c.formulation = "uv";
        c.grid.dim = 2;
        c.grid.extent[0] = 1.0;
        c.grid.extent[1] = 1.0;
        c.grid.cells[0] = 64;
        c.grid.cells[1] = 64;
        c.params.chi = 0.8;
        c.params.kappa = 1.0;
        c.params.mu = 0.5;
        c.u0.kind = InitSpec::Kind::gaussian;
        c.u0.value = 0.5;
        c.u0.amplitude = 2.0;
        c.u0.width = 0.12;
        c.v0.kind = InitSpec::Kind::cosine;
        c.v0.value = 1.0;
        c.v0.amplitude = 0.3;
        c.v0.mode[0] = 1;
        c.v0.mode[1] = 1;
        c.t_end = 20.0;
        c.cadence = 0.05;
    } else if (name == "1d-bounded") {
        c.formulation = "uw";
        c.grid.dim = 1;
        c.grid.extent[0] = 2.0;
        c.grid.cells[0] = 256;
        c.params.chi = 2.0;
        c.params.kappa = 1.0;
        c.params.mu = 0.25;
        c.u0.kind = InitSpec::Kind::gaussian;
        c.u0.value = 0.2;
        c.u0.amplitude = 3.0;
        c.u0.width = 0.1;
        c.u0.center[0] = 1.0;
        c.v0.kind = InitSpec::Kind::cosine;
        c.v0.value = 1.0;
        c.v0.amplitude = 0.4;
        c.v0.mode[0] = 2;
        c.t_end = 100.0;
        c.cadence = 0.05;
    } else if (name == "1d-perturbed") {
        c.formulation = "both";
        c.grid.dim = 1;
        c.grid.extent[0] = 1.0;
        c.grid.cells[0] = 64;
        c.params.chi = 1.0;
        c.params.kappa = 0.5;
        c.params.mu = 0.5;
        c.u0.kind = InitSpec::Kind::gaussian;
        c.u0.value = 0.5;
        c.u0.amplitude = 1.5;
        c.u0.width = 0.08;
        c.v0.kind = InitSpec::Kind::cosine;
        c.v0.value = 1.0;
        c.v0.amplitude = 0.25;
        c.v0.mode[0] = 1;
        c.t_end = 0.5;
        c.cadence = 0.05;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return c;
}

void apply_env(RunConfig& cfg) {
    KvMap kv;
    apply_env_overrides(kv);
    apply_map(cfg, kv);
    cfg.validate();
}

RunConfig parse_run_config(const std::string& text) {
    KvMap kv = parse_ini(text);
    apply_env_overrides(kv);
    RunConfig c;
    if (auto it = kv.find("run"); it != kv.end()) {
        if (auto p = it->second.find("preset"); p != it->second.end())
            c = preset_config(p->second);
    }
    apply_map(c, kv);
    c.validate();
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig sc;
    sc.base = parse_run_config(text);
    KvMap kv = parse_ini(text);
    apply_env_overrides(kv);
    if (auto it = kv.find("sweep"); it != kv.end()) {
        for (const auto& [k, v] : it->second) {
            if (k == "chi") sc.chi_values = to_list(v, k);
            else if (k == "mu") sc.mu_values = to_list(v, k);
            else if (k == "kappa") sc.kappa_values = to_list(v, k);
            else if (k == "cap")
                sc.cap = static_cast<size_t>(to_int(v, k));
            else if (k == "aggregate") sc.aggregate = v;
        }
    }
    if (sc.chi_values.empty()) sc.chi_values = {sc.base.params.chi};
    if (sc.mu_values.empty()) sc.mu_values = {sc.base.params.mu};
    if (sc.kappa_values.empty()) sc.kappa_values = {sc.base.params.kappa};
    if (sc.aggregate != "all-pass" && sc.aggregate != "count")
        throw ConfigError("config: sweep aggregate must be all-pass|count");
    const size_t total =
        sc.chi_values.size() * sc.mu_values.size() * sc.kappa_values.size();
    if (total > sc.cap)
        throw ConfigError("sweep: cartesian product size " +
                          std::to_string(total) + " exceeds cap " +
                          std::to_string(sc.cap));
    return sc;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sweep config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_sweep_config(ss.str());
}

}  // namespace chemsim::cli
