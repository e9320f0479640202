#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heatflow/exponents.hpp"
#include "heatflow/solver.hpp"

namespace heatflow {

/// One requested verification check with its numeric parameters
/// (e.g. name "decay" with window_lo / window_hi).
struct CheckRequest {
    std::string name;
    std::map<std::string, double> params;

    double param(const std::string& key, double fallback) const;
};

/// Parsed experiment description. The on-disk format is a flat text file of
/// dotted `key = value` lines (see docs in config.cpp); unknown keys are
/// rejected.
struct ExperimentConfig {
    BaseExponents base;
    std::optional<ExponentPlan> plan_override;
    double plan_margin = 0.0;

    int bandwidth = 8;
    int resolution = 0;  // 0: defaults to 2 * bandwidth

    double t_end = 1.0;
    double dt = 1.0 / 64;

    std::string law_name = "linear-buoyancy";
    double law_param = 1.0;

    std::string recipe = "single-mode";
    double u_target = 0.0;
    double theta_target = 0.0;
    double damping = 1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;

    SolveMode mode = SolveMode::Etd;
    double tol = 1e-10;
    int max_iter = 25;

    std::vector<CheckRequest> checks;
    std::string out_dir;
    bool dump_coefficients = false;
    std::vector<double> norm_alphas;  // extra |u|_{X^alpha} series to record

    int effective_resolution() const { return resolution > 0 ? resolution : 2 * bandwidth; }
    void validate() const;  // raises invariant_violation naming the field
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace heatflow
