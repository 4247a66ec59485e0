#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chemsim/comparison.hpp"
#include "chemsim/config.hpp"
#include "chemsim/monitors.hpp"

namespace chemsim::cli {

// One row per snapshot: t, ||u||_1, ||u||_2, ||u||_inf, ||v||_1, ||v||_inf,
// min v, the energy functional when configured, and the seven 1d series
// when the grid is one-dimensional. Each file starts with comment lines
// carrying the config hash and kernel backend.
void write_series_csv(const std::string& path, const Trajectory& traj,
                      const std::optional<std::pair<double, double>>& energy_pr,
                      const std::string& config_hash);

nlohmann::json monitor_entry_json(const monitors::MonitorEntry& e);
nlohmann::json run_report_json(const RunConfig& cfg, const ModelParams& eff,
                               const Trajectory& traj, const BlowupFlag& blowup,
                               const monitors::MonitorReport& rep);
nlohmann::json ordering_report_json(const comparison::OrderingReport& r);

void write_json_file(const std::string& path, const nlohmann::json& j);

// Raw field dump: a header line "t,dim,nx[,ny]", its values on the next
// line, then the cell values row-major (one grid row per line).
void write_field_dump(const std::string& path, double t, const Field& f,
                      const std::string& config_hash);

struct SweepRow {
    double chi, mu, kappa;
    bool chi_ok, mu_strict, mu_relaxed;
    int monitors_passed, monitors_failed;
    bool blowup;
    double final_u_linf;
    int exit_code;
};

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const std::string& config_hash);

}  // namespace chemsim::cli
