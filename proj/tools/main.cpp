// Command-line front end: exponent planning, simulation runs, estimate
// verification, and Gronwall bound-vs-oracle comparisons.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "heatflow/experiment.hpp"
#include "heatflow/serialize.hpp"
#include "heatflow/version.hpp"

namespace hf = heatflow;
namespace fs = std::filesystem;

namespace {

void print_check_report(const hf::CheckReport& report) {
    for (const auto& c : report.items)
        std::printf("  %-28s %-4s slack % .6f%s\n", c.name.c_str(), c.pass ? "ok" : "FAIL",
                    c.slack, c.strict ? " (strict)" : "");
}

int cmd_plan(const std::string& config_path, const std::string& out_dir) {
    hf::ExperimentConfig cfg = hf::load_config(config_path);
    std::printf("base: n=%d p=%g q=%g alpha0=%g beta0=%g\n", cfg.base.n, cfg.base.p, cfg.base.q,
                cfg.base.alpha0, cfg.base.beta0);
    hf::CheckReport base = hf::check_base_exponents(cfg.base);
    std::printf("admissibility:\n");
    print_check_report(base);
    hf::CheckReport reg = hf::check_regularity_exponents(cfg.base);
    std::printf("regularity regimes:\n");
    print_check_report(reg);

    hf::PlanOutcome outcome = hf::plan_exponents(cfg.base, cfg.plan_margin);
    if (!outcome.plan) {
        std::printf("plan: infeasible; violated constraints:\n");
        for (const auto& n : outcome.report.failed_names()) std::printf("  %s\n", n.c_str());
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            hf::write_file(out_dir + "/constraints.json", hf::to_json(outcome.report));
        }
        return 2;
    }
    const hf::ExponentPlan& pl = *outcome.plan;
    std::printf("plan: delta1=%g delta2=%g alpha1=%g alpha2=%g beta1=%g beta2=%g%s\n", pl.delta1,
                pl.delta2, pl.alpha1, pl.alpha2, pl.beta1, pl.beta2,
                pl.beta1_equality_branch ? " (pinned beta1 branch)" : "");
    std::printf("minimum strict slack: %g\n", outcome.min_slack);
    hf::CheckReport recheck = hf::revalidate_plan(pl);
    std::printf("independent re-validation: %s\n", recheck.all_pass() ? "ok" : "FAILED");
    if (!recheck.all_pass()) print_check_report(recheck);
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        hf::write_file(out_dir + "/plan.json", hf::to_json(pl));
        hf::write_file(out_dir + "/constraints.json", hf::to_json(outcome.report));
    }
    return recheck.all_pass() ? 0 : 2;
}

void apply_overrides(hf::ExperimentConfig& cfg, const std::string& mode, long long seed,
                     const std::string& out_dir, const std::string& checks) {
    if (!mode.empty()) {
        if (mode == "picard") cfg.mode = hf::SolveMode::Picard;
        else if (mode == "etd") cfg.mode = hf::SolveMode::Etd;
        else throw CLI::ValidationError("--mode must be picard or etd");
    }
    if (seed >= 0) {
        cfg.seed = std::uint64_t(seed);
        cfg.seed_set = true;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!checks.empty()) {
        cfg.checks.clear();
        std::stringstream ss(checks);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) cfg.checks.push_back({item, {}});
    }
}

int run_and_report(const hf::ExperimentConfig& cfg) {
    hf::RunRecord rec = hf::run_experiment(cfg);
    if (!rec.stage_error.empty()) std::printf("error: %s\n", rec.stage_error.c_str());
    if (!rec.t.empty()) {
        std::printf("solved %zu nodes to t=%g; |u|+|theta|: %.6e -> %.6e\n", rec.t.size(),
                    rec.t.back(), rec.u_l2.front() + rec.theta_l2.front(),
                    rec.u_l2.back() + rec.theta_l2.back());
    }
    for (const auto& c : rec.checks)
        std::printf("check %-24s %-4s value %.6e  %s\n", c.name.c_str(),
                    c.pass ? "pass" : "FAIL", c.value, c.detail.c_str());
    std::printf("content hash: %016llx\n", static_cast<unsigned long long>(rec.content_hash));
    return hf::exit_code_for(rec);
}

int cmd_gronwall(const std::string& spec_path, const std::string& out_dir, int nodes) {
    hf::GronwallSpec spec = hf::gronwall_spec_from_json(hf::read_file(spec_path));
    std::vector<double> y = hf::volterra_oracle(spec, nodes);
    std::vector<double> t = hf::volterra_nodes(spec, nodes);
    auto c = hf::find_dominating_constant(spec, nodes);
    if (!c) {
        std::printf("no dominating constant up to 2^60\n");
        return 2;
    }
    std::printf("smallest dominating dyadic constant: %g\n", *c);
    std::ostringstream csv;
    csv.precision(17);
    csv << "t,oracle,bound\n";
    for (std::size_t i = 0; i < y.size(); ++i)
        csv << t[i] << ',' << y[i] << ',' << hf::gronwall_bound(spec, *c, t[i]) << '\n';
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        hf::write_file(out_dir + "/gronwall.csv", csv.str());
        std::printf("wrote %s/gronwall.csv\n", out_dir.c_str());
    } else {
        std::fputs(csv.str().c_str(), stdout);
    }
    return 0;
}

int cmd_report(const std::string& record_path, const std::string& out_dir) {
    nlohmann::json j = nlohmann::json::parse(hf::read_file(record_path));
    std::printf("tool version : %s\n", j.value("tool_version", "?").c_str());
    std::printf("content hash : %s\n", j.value("content_hash", "?").c_str());
    std::string err = j.value("stage_error", "");
    if (!err.empty()) std::printf("stage error  : %s\n", err.c_str());
    auto t = j.at("t").get<std::vector<double>>();
    auto ul2 = j.at("u_l2").get<std::vector<double>>();
    auto tl2 = j.at("theta_l2").get<std::vector<double>>();
    if (!t.empty())
        std::printf("trajectory   : %zu nodes, t in [%g, %g]\n", t.size(), t.front(), t.back());
    std::printf("%12s %14s %14s\n", "t", "|u|_2", "|theta|_2");
    for (std::size_t i = 0; i < t.size(); i += std::max<std::size_t>(1, t.size() / 12))
        std::printf("%12.6f %14.6e %14.6e\n", t[i], ul2[i], tl2[i]);
    for (const auto& c : j.at("checks"))
        std::printf("check %-24s %-4s value %.6e\n", c.at("name").get<std::string>().c_str(),
                    c.at("pass").get<bool>() ? "pass" : "FAIL", c.at("value").get<double>());
    if (!out_dir.empty()) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "t,u_l2,theta_l2\n";
        for (std::size_t i = 0; i < t.size(); ++i)
            csv << t[i] << ',' << ul2[i] << ',' << tl2[i] << '\n';
        fs::create_directories(out_dir);
        hf::write_file(out_dir + "/report.csv", csv.str());
        std::printf("wrote %s/report.csv\n", out_dir.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral mild-solution solver and estimate harness"};
    app.set_version_flag("--version", hf::kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir, mode, checks, spec_path, record_path;
    long long seed = -1;
    int nodes = 1024;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--out", out_dir, "output directory");
    };

    CLI::App* plan = app.add_subcommand("plan", "exponent feasibility report");
    add_common(plan, true);

    CLI::App* simulate = app.add_subcommand("simulate", "solve and persist a run record");
    add_common(simulate, true);
    simulate->add_option("--seed", seed, "seed override");
    simulate->add_option("--mode", mode, "picard|etd");

    CLI::App* verify =
        app.add_subcommand("verify", "run estimate checks on a stored trajectory or fresh solve");
    add_common(verify, true);
    verify->add_option("--seed", seed, "seed override");
    verify->add_option("--mode", mode, "picard|etd");
    verify->add_option("--checks", checks, "comma-separated check list override");
    std::string traj_dir;
    verify->add_option("--traj", traj_dir,
                       "run directory with coefficient dumps to verify instead of solving");

    CLI::App* gronwall = app.add_subcommand("gronwall", "bound vs oracle for a spec file");
    gronwall->add_option("--spec", spec_path, "gronwall spec json")->required();
    gronwall->add_option("--out", out_dir, "output directory");
    gronwall->add_option("--nodes", nodes, "oracle nodes");

    CLI::App* report = app.add_subcommand("report", "render a stored run record");
    report->add_option("--record", record_path, "record.json path")->required();
    report->add_option("--out", out_dir, "also write the norm series as CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed()) return cmd_plan(config_path, out_dir);
        if (simulate->parsed() || verify->parsed()) {
            hf::ExperimentConfig cfg = hf::load_config(config_path);
            apply_overrides(cfg, mode, seed, out_dir, checks);
            if (verify->parsed() && !traj_dir.empty()) {
                hf::Trajectory traj = hf::load_trajectory(traj_dir, cfg);
                hf::RunRecord rec = hf::verify_trajectory(cfg, traj);
                if (!rec.stage_error.empty())
                    std::printf("error: %s\n", rec.stage_error.c_str());
                for (const auto& c : rec.checks)
                    std::printf("check %-24s %-4s value %.6e  %s\n", c.name.c_str(),
                                c.pass ? "pass" : "FAIL", c.value, c.detail.c_str());
                if (!cfg.out_dir.empty()) {
                    fs::create_directories(cfg.out_dir);
                    hf::write_file(cfg.out_dir + "/record.json", hf::to_json(rec));
                    hf::write_file(cfg.out_dir + "/norms.csv", hf::norm_series_csv(rec));
                }
                return hf::exit_code_for(rec);
            }
            return run_and_report(cfg);
        }
        if (gronwall->parsed()) return cmd_gronwall(spec_path, out_dir, nodes);
        if (report->parsed()) return cmd_report(record_path, out_dir);
    } catch (const hf::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
