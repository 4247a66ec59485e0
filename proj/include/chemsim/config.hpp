#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chemsim/monitors.hpp"
#include "chemsim/params.hpp"
#include "chemsim/scenario.hpp"

namespace chemsim::cli {

struct GridSpec {
    int dim = 1;
    double extent[2] = {1.0, 1.0};
    int cells[2] = {128, 128};
    Grid make() const;
};

struct RunConfig {
    std::string preset;  // name this config started from, if any
    std::string formulation = "uv";  // uv | uw | both
    std::string kernels = "auto";    // auto | scalar | avx2
    GridSpec grid;
    ModelParams params;  // eta here is ignored when eta_auto is set
    bool eta_auto = true;
    InitSpec u0, v0;
    double t_end = 1.0;
    double cadence = 0.05;
    double safety = 0.4;
    std::optional<double> dt_override;
    unsigned long seed = 0;
    bool monitors_enabled = true;
    monitors::MonitorConfig mon;
    bool write_series = true;
    bool write_report = true;
    bool dump_fields = false;
    int dump_every = 1;

    void validate() const;
    // eta default: 1e-10 * inf v0, so the guard is inert in healthy runs
    ModelParams effective_params(const Field& v0_field) const;
    std::string canonical() const;  // sorted section.key=value lines
    std::string hash() const;       // fnv1a-64 of canonical(), hex
};

struct SweepConfig {
    RunConfig base;
    std::vector<double> chi_values;
    std::vector<double> mu_values;
    std::vector<double> kappa_values;
    size_t cap = 64;
    std::string aggregate = "all-pass";  // all-pass | count
};

std::vector<std::string> preset_names();
RunConfig preset_config(const std::string& name);

// Flat key-value file with [section] headers; '#' and ';' comments. Unknown
// sections or keys are rejected. After the file, environment overrides
// CHEMSIM_<SECTION>__<KEY> are applied (documented in the README).
RunConfig load_run_config(const std::string& path);
SweepConfig load_sweep_config(const std::string& path);

// Exposed for tests: parse from an already-loaded string.
RunConfig parse_run_config(const std::string& text);
SweepConfig parse_sweep_config(const std::string& text);

// Applies CHEMSIM_* environment overrides to an existing config (the file
// loaders do this on their own; preset-based configs need it explicitly).
void apply_env(RunConfig& cfg);

}  // namespace chemsim::cli
