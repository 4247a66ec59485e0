#pragma once

#include <string>
#include <vector>

#include "chemsim/config.hpp"
#include "chemsim/report_io.hpp"

namespace chemsim::cli {

// Exit codes shared by all subcommands.
constexpr int kExitOk = 0;
constexpr int kExitMonitorFail = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitConfig = 4;

struct RunArtifacts {
    Trajectory traj;
    BlowupFlag blowup;
    monitors::MonitorReport report;
    ModelParams params;
    int exit_code = kExitOk;
};

// Simulate one formulation of the configured scenario; no files written.
RunArtifacts simulate(const RunConfig& cfg, Formulation form);

// Full run command: simulate (both formulations when configured), evaluate
// monitors, write series/report/dumps under out_dir. Returns the exit code.
int execute_run(const RunConfig& cfg, const std::string& out_dir, bool quiet);

int execute_sweep(const SweepConfig& sc, const std::string& out_dir, bool quiet,
                  int jobs);

struct CompareLevel {
    int cells;
    double dt;
    double gap;  // sup-norm v discrepancy between formulations at t_end
};
struct CompareResult {
    std::vector<CompareLevel> levels;
    std::vector<double> orders;  // log(gap_k/gap_{k+1}) / log 4
};

// Runs uv and uw side by side at `levels` refinement levels (h/2 and dt/4
// per level) and reports the sup-norm discrepancy of the reconstructed
// signal at t_end.
CompareResult compare_formulations(const RunConfig& cfg, int levels);

int execute_compare(const RunConfig& cfg, int levels,
                    const std::string& out_dir, bool quiet);

int execute_verify(const RunConfig& cfg, const std::string& out_dir,
                   bool quiet);

int execute_check_exponents(double chi, double mu, int n, double p0,
                            bool have_p0, bool quiet);

}  // namespace chemsim::cli
