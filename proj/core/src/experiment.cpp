#include "heatflow/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "heatflow/sampling.hpp"
#include "heatflow/serialize.hpp"
#include "heatflow/version.hpp"

namespace heatflow {

namespace {

std::uint64_t data_seed(std::uint64_t seed, std::uint64_t slot) {
    return seed ^ (0x9e3779b97f4a7c15ULL * (slot + 1));
}

}  // namespace

InitialData make_initial_data(const ExperimentConfig& cfg, const ExponentPlan& plan) {
    const int K = cfg.bandwidth;
    DiagonalOperator opu(OperatorKind::StokesFreeSlip, K);
    DiagonalOperator opt(OperatorKind::TemperatureLaplacian, K);
    VelocityField u0(K);
    ScalarField th0(K);

    if (cfg.recipe == "single-mode") {
        u0.at(1, 1) = 1.0;
        th0.at(1, 1) = 1.0;
    } else if (cfg.recipe == "random-band") {
        u0 = sample_velocity(K, data_seed(cfg.seed, 0), cfg.damping);
        th0 = sample_scalar(K, data_seed(cfg.seed, 1), cfg.damping);
    } else if (cfg.recipe == "taylor-vortex-like") {
        u0.at(1, 1) = 1.0;
        if (K >= 2) {
            u0.at(2, 1) = 0.3;
            u0.at(1, 2) = 0.3;
        }
        th0.at(1, 1) = 0.5;
        if (K >= 2) th0.at(2, 2) = 0.4;
    } else {
        raise(Errc::unknown_recipe, "data recipe '" + cfg.recipe + "'");
    }

    return {normalize_to(opu, plan.base.alpha0, cfg.u_target, std::move(u0)),
            normalize_to(opt, plan.base.beta0, cfg.theta_target, std::move(th0))};
}

namespace {

CheckOutcome run_check(const CheckRequest& req, const ExperimentConfig& cfg,
                       const ExponentPlan& plan, const Trajectory& traj,
                       const std::vector<double>& total_norms,
                       const std::vector<double>& distances) {
    CheckOutcome out;
    out.name = req.name;
    const int K = cfg.bandwidth;

    if (req.name == "decay") {
        double lo = req.param("window_lo", 1.0);
        double hi = req.param("window_hi", cfg.t_end);
        double min_rate = req.param("min_rate", 1.5);
        std::vector<double> t(traj.grid.nodes());
        for (int i = 0; i < traj.grid.nodes(); ++i) t[i] = traj.grid.node(i);
        DecayFit fit = fit_decay_rate(t, total_norms, lo, hi);
        out.value = fit.rate;
        out.pass = fit.rate >= min_rate;
        out.detail = "fitted decay rate over [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "], threshold " + std::to_string(min_rate);
        return out;
    }
    if (req.name == "semigroup") {
        double alpha = req.param("alpha", 1.0);
        double lambda = req.param("lambda", 1.0);
        int samples = int(req.param("samples", 100));
        DiagonalOperator op(OperatorKind::StokesFreeSlip, K);
        EstimateReport rep =
            estimate_semigroup_constant(op, alpha, lambda, samples, cfg.seed);
        out.value = rep.constant;
        out.pass = rep.constant <= rep.reference + 1e-9;
        out.detail = "empirical vs envelope " + std::to_string(rep.reference);
        return out;
    }
    if (req.name == "holder") {
        double alpha = req.param("alpha", 0.5);
        int samples = int(req.param("samples", 50));
        DiagonalOperator op(OperatorKind::TemperatureLaplacian, K);
        EstimateReport rep = estimate_holder_constant(op, alpha, samples, cfg.seed);
        out.value = rep.constant;
        out.pass = rep.constant <= rep.reference + 1e-6;
        out.detail = "empirical vs envelope " + std::to_string(rep.reference);
        return out;
    }
    if (req.name == "residual") {
        double threshold = req.param("threshold", 1e-2);
        ResidualSeries rs = residual_strong(traj);
        out.value = rs.max();
        out.pass = out.value <= threshold;
        out.detail = "max interior residual, threshold " + std::to_string(threshold);
        return out;
    }
    if (req.name == "restart") {
        int j = int(req.param("node", traj.grid.steps / 2));
        double threshold = req.param("threshold", 1e-6);
        out.value = restart_consistency(traj, j);
        out.pass = out.value <= threshold;
        out.detail = "restart discrepancy at node " + std::to_string(j);
        return out;
    }
    if (req.name == "dissipation-positivity") {
        double worst = 0.0;
        for (int i = 0; i < traj.grid.nodes(); ++i) {
            auto vals = dissipation_grid(traj.u[i], traj.u[i]);
            for (double v : vals) worst = std::min(worst, v);
        }
        out.value = worst;
        out.pass = worst >= -1e-12;
        out.detail = "min of the viscous-heating grid values over all nodes";
        return out;
    }
    if (req.name == "contraction") {
        double max_ratio = 0.0;
        for (std::size_t m = 1; m + 1 < distances.size(); ++m)
            if (distances[m] > 1e-14)
                max_ratio = std::max(max_ratio, distances[m + 1] / distances[m]);
        out.value = max_ratio;
        out.pass = traj.mode == SolveMode::Picard && !distances.empty() &&
                   max_ratio <= req.param("max_ratio", 0.5);
        out.detail = "sweep distance ratios from the second sweep on";
        return out;
    }
    if (req.name == "global-bound") {
        double lambda = req.param("lambda", 1.0);
        double lambda2 = req.param("lambda2", 1.5);
        BoundSeries bs = global_bound_functions(traj, lambda, lambda2, plan.base.alpha0,
                                                plan.base.beta0, plan.base.alpha0,
                                                plan.base.beta0);
        double e = 0.0;
        for (std::size_t i = 0; i < bs.e1.size(); ++i)
            e = std::max(e, std::max(bs.e1[i], bs.e2[i]));
        double cap = req.param("cap", 0.0);
        out.value = e;
        out.pass = cap <= 0.0 || e <= cap * (total_norms.empty() ? 1.0 : total_norms.front());
        out.detail = "max of the running weighted suprema";
        return out;
    }
    out.pass = false;
    out.detail = "unknown check name";
    return out;
}

// Norm series, checks and the content hash, shared by fresh and stored runs.
void finish_record(RunRecord& rec, const ExperimentConfig& cfg, const ExponentPlan& plan,
                   const Trajectory& traj, const std::vector<double>& distances) {
    DiagonalOperator opu(OperatorKind::StokesFreeSlip, traj.bandwidth());
    DiagonalOperator opt(OperatorKind::TemperatureLaplacian, traj.bandwidth());
    std::vector<double> total_norms;
    rec.norm_alphas = cfg.norm_alphas;
    rec.u_xextra.assign(cfg.norm_alphas.size(), {});
    for (int i = 0; i < traj.grid.nodes(); ++i) {
        rec.t.push_back(traj.grid.node(i));
        rec.u_l2.push_back(l2_norm(traj.u[i]));
        rec.theta_l2.push_back(l2_norm(traj.theta[i]));
        rec.u_xalpha0.push_back(fractional_norm(opu, plan.base.alpha0, traj.u[i]));
        rec.theta_ybeta0.push_back(fractional_norm(opt, plan.base.beta0, traj.theta[i]));
        for (std::size_t a = 0; a < cfg.norm_alphas.size(); ++a)
            rec.u_xextra[a].push_back(fractional_norm(opu, cfg.norm_alphas[a], traj.u[i]));
        total_norms.push_back(rec.u_l2.back() + rec.theta_l2.back());
    }

    if (rec.stage_error.empty()) {
        for (const auto& req : cfg.checks) {
            try {
                rec.checks.push_back(run_check(req, cfg, plan, traj, total_norms, distances));
            } catch (const Error& e) {
                rec.checks.push_back({req.name, false, 0.0, e.what()});
            }
        }
    }
    rec.content_hash = content_hash(rec);
}

}  // namespace

bool RunRecord::all_checks_pass() const {
    if (!stage_error.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

RunRecord run_experiment(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.tool_version = kVersion;
    rec.config_text = config_snapshot(cfg);

    ExponentPlan plan;
    try {
        cfg.validate();
        if (cfg.plan_override) {
            plan = *cfg.plan_override;
        } else {
            PlanOutcome planned = plan_exponents(cfg.base, cfg.plan_margin);
            if (!planned.plan) {
                std::string names;
                for (const auto& n : planned.report.failed_names()) names += " " + n;
                rec.stage_error = "plan: infeasible exponents;" + names;
                rec.content_hash = content_hash(rec);
                return rec;
            }
            plan = *planned.plan;
        }
        rec.plan = plan;
    } catch (const Error& e) {
        rec.stage_error = std::string("plan: ") + e.what();
        rec.content_hash = content_hash(rec);
        return rec;
    }

    Trajectory traj;
    std::vector<double> distances;
    try {
        InitialData data = make_initial_data(cfg, plan);
        TimeGrid grid = TimeGrid::from_step(cfg.t_end, cfg.dt);
        ForcingLaw law = make_forcing_law(cfg.law_name, cfg.law_param);
        if (cfg.mode == SolveMode::Picard) {
            PicardResult pr =
                picard_solve(data.u0, data.theta0, law, grid, cfg.max_iter, cfg.tol);
            distances = pr.distances;
            traj = std::move(pr.trajectory);
            if (pr.status == PicardStatus::Diverged) {
                rec.stage_error = "solve: picard iteration did not reach tolerance";
            }
        } else {
            traj = etd_march(data.u0, data.theta0, law, grid);
        }
    } catch (const Error& e) {
        rec.stage_error = std::string("solve: ") + e.what();
        rec.content_hash = content_hash(rec);
        return rec;
    }

    finish_record(rec, cfg, plan, traj, distances);
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        write_file(cfg.out_dir + "/record.json", to_json(rec));
        write_file(cfg.out_dir + "/norms.csv", norm_series_csv(rec));
        if (!rec.checks.empty()) {
            std::string csv = "name,pass,value,detail\n";
            for (const auto& c : rec.checks) {
                char row[320];
                std::snprintf(row, sizeof row, "%s,%d,%.17g,\"%s\"\n", c.name.c_str(),
                              int(c.pass), c.value, c.detail.c_str());
                csv += row;
            }
            write_file(cfg.out_dir + "/checks.csv", csv);
        }
        for (const auto& c : rec.checks) {
            if (c.name != "decay" || rec.t.empty()) continue;
            // plot data: observed total norm against the fitted envelope
            double anchor = rec.u_l2.front() + rec.theta_l2.front();
            std::string csv = "t,value,bound\n";
            for (std::size_t i = 0; i < rec.t.size(); ++i) {
                char row[120];
                std::snprintf(row, sizeof row, "%.17g,%.17g,%.17g\n", rec.t[i],
                              rec.u_l2[i] + rec.theta_l2[i],
                              anchor * std::exp(-c.value * rec.t[i]));
                csv += row;
            }
            write_file(cfg.out_dir + "/decay_fit.csv", csv);
        }
        if (cfg.dump_coefficients) {
            fs::create_directories(cfg.out_dir + "/coefficients");
            for (int i = 0; i < traj.grid.nodes(); ++i) {
                write_file(cfg.out_dir + "/coefficients/u_" + std::to_string(i) + ".json",
                           to_json(traj.u[i]));
                write_file(cfg.out_dir + "/coefficients/theta_" + std::to_string(i) + ".json",
                           to_json(traj.theta[i]));
            }
        }
    }
    return rec;
}

RunRecord verify_trajectory(const ExperimentConfig& cfg, const Trajectory& traj) {
    auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.tool_version = kVersion;
    rec.config_text = config_snapshot(cfg);
    try {
        if (cfg.plan_override) {
            rec.plan = *cfg.plan_override;
        } else {
            PlanOutcome planned = plan_exponents(cfg.base, cfg.plan_margin);
            if (!planned.plan) {
                rec.stage_error = "plan: infeasible exponents";
                rec.content_hash = content_hash(rec);
                return rec;
            }
            rec.plan = *planned.plan;
        }
        finish_record(rec, cfg, rec.plan, traj, {});
    } catch (const Error& e) {
        rec.stage_error = std::string("verify: ") + e.what();
        rec.content_hash = content_hash(rec);
    }
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

Trajectory load_trajectory(const std::string& run_dir, const ExperimentConfig& cfg) {
    TimeGrid grid = TimeGrid::from_step(cfg.t_end, cfg.dt);
    Trajectory traj;
    traj.grid = grid;
    traj.law = make_forcing_law(cfg.law_name, cfg.law_param);
    traj.mode = cfg.mode;
    for (int i = 0; i <= grid.steps; ++i) {
        std::string stem = run_dir + "/coefficients/";
        traj.u.push_back(velocity_from_json(read_file(stem + "u_" + std::to_string(i) + ".json")));
        traj.theta.push_back(
            scalar_from_json(read_file(stem + "theta_" + std::to_string(i) + ".json")));
    }
    if (traj.bandwidth() != cfg.bandwidth)
        raise(Errc::shape_error, "stored trajectory bandwidth does not match the config");
    return traj;
}

int exit_code_for(const RunRecord& record) {
    if (!record.stage_error.empty()) return 3;
    return record.all_checks_pass() ? 0 : 2;
}

}  // namespace heatflow
