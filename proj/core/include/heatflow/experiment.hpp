#pragma once

#include "heatflow/config.hpp"
#include "heatflow/estimates.hpp"

namespace heatflow {

/// Named initial-data generators. All outputs are scaled so that
/// |A^{alpha0} u0|_2 and |B^{beta0} theta0|_2 hit the requested targets
/// exactly (zero targets give zero fields).
///   single-mode        lowest mode only
///   random-band        seeded damped Gaussian coefficients
///   taylor-vortex-like fixed low-mode vortex/plume pattern
struct InitialData {
    VelocityField u0;
    ScalarField theta0;
};
InitialData make_initial_data(const ExperimentConfig& cfg, const ExponentPlan& plan);

struct CheckOutcome {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string detail;
};

/// Everything a run produced: the configuration snapshot, the plan, norm
/// series, check outcomes and a content hash. `content_hash` covers the
/// numeric payload (not timings), so identical config + seed reproduce it
/// bit-identically.
struct RunRecord {
    std::string config_text;
    ExponentPlan plan;
    std::vector<double> t;
    std::vector<double> u_l2;
    std::vector<double> theta_l2;
    std::vector<double> u_xalpha0;
    std::vector<double> theta_ybeta0;
    std::vector<double> norm_alphas;              // requested extra exponents
    std::vector<std::vector<double>> u_xextra;    // one series per entry above
    std::vector<CheckOutcome> checks;
    std::string stage_error;  // empty unless a stage failed; prefixed by stage tag
    std::string tool_version;
    double wall_seconds = 0.0;
    std::uint64_t content_hash = 0;

    bool all_checks_pass() const;
};

/// Plans (unless overridden), builds data, solves, runs the requested
/// checks, and persists record and artifacts under cfg.out_dir when set.
/// Stage failures are recorded, not thrown.
RunRecord run_experiment(const ExperimentConfig& cfg);

/// Runs the config's checks on an existing trajectory (planning still
/// happens; the data/solve stages are skipped). Used to verify stored runs.
RunRecord verify_trajectory(const ExperimentConfig& cfg, const Trajectory& traj);

/// Rebuilds a trajectory from a run directory written with
/// output.dump_coefficients (coefficients/u_i.json, theta_i.json).
Trajectory load_trajectory(const std::string& run_dir, const ExperimentConfig& cfg);

/// Exit-code contract shared by the CLI: 0 all checks pass, 2 some check
/// failed, 3 infrastructure error.
int exit_code_for(const RunRecord& record);

}  // namespace heatflow
