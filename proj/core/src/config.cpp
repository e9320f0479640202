#include "heatflow/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace heatflow {

double CheckRequest::param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        raise(Errc::parse_error, "key '" + key + "': expected a number, got '" + v + "'");
    }
    if (used != v.size())
        raise(Errc::parse_error, "key '" + key + "': expected a number, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    raise(Errc::parse_error, "key '" + key + "': expected true/false, got '" + v + "'");
}

const std::set<std::string> kPlanKeys = {"plan.alpha1", "plan.alpha2", "plan.beta1",
                                         "plan.beta2",  "plan.delta1", "plan.delta2"};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::map<std::string, double> plan_vals;
    std::map<std::string, std::map<std::string, double>> check_params;
    std::vector<std::string> check_list;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            raise(Errc::parse_error,
                  "line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            raise(Errc::parse_error, "line " + std::to_string(lineno) + ": empty key or value");

        if (key == "exponents.n") cfg.base.n = int(to_number(key, val));
        else if (key == "exponents.p") cfg.base.p = to_number(key, val);
        else if (key == "exponents.q") cfg.base.q = to_number(key, val);
        else if (key == "exponents.alpha0") cfg.base.alpha0 = to_number(key, val);
        else if (key == "exponents.beta0") cfg.base.beta0 = to_number(key, val);
        else if (key == "operator.bandwidth") cfg.bandwidth = int(to_number(key, val));
        else if (key == "grid.resolution") cfg.resolution = int(to_number(key, val));
        else if (key == "time.t_end") cfg.t_end = to_number(key, val);
        else if (key == "time.dt") cfg.dt = to_number(key, val);
        else if (key == "forcing.law") cfg.law_name = val;
        else if (key == "forcing.parameter") cfg.law_param = to_number(key, val);
        else if (key == "data.recipe") cfg.recipe = val;
        else if (key == "data.u_norm") cfg.u_target = to_number(key, val);
        else if (key == "data.theta_norm") cfg.theta_target = to_number(key, val);
        else if (key == "data.damping") cfg.damping = to_number(key, val);
        else if (key == "data.seed") {
            cfg.seed = std::uint64_t(to_number(key, val));
            cfg.seed_set = true;
        } else if (key == "solver.mode") {
            if (val == "picard") cfg.mode = SolveMode::Picard;
            else if (val == "etd") cfg.mode = SolveMode::Etd;
            else raise(Errc::parse_error, "solver.mode must be picard or etd");
        } else if (key == "solver.tol") cfg.tol = to_number(key, val);
        else if (key == "solver.max_iter") cfg.max_iter = int(to_number(key, val));
        else if (key == "plan.margin") cfg.plan_margin = to_number(key, val);
        else if (kPlanKeys.count(key)) plan_vals[key] = to_number(key, val);
        else if (key == "checks.list") {
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (!item.empty()) check_list.push_back(item);
            }
        } else if (key.rfind("checks.", 0) == 0) {
            auto rest = key.substr(7);
            auto dot = rest.find('.');
            if (dot == std::string::npos)
                raise(Errc::parse_error, "unknown key '" + key + "'");
            check_params[rest.substr(0, dot)][rest.substr(dot + 1)] = to_number(key, val);
        } else if (key == "output.dir") cfg.out_dir = val;
        else if (key == "output.dump_coefficients") cfg.dump_coefficients = to_bool(key, val);
        else if (key == "output.norm_alphas") {
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!trim(item).empty()) cfg.norm_alphas.push_back(to_number(key, trim(item)));
        } else raise(Errc::parse_error, "unknown key '" + key + "'");
    }

    if (!plan_vals.empty()) {
        if (plan_vals.size() != kPlanKeys.size())
            raise(Errc::parse_error, "plan override requires all six plan.* exponents");
        ExponentPlan pl;
        pl.base = cfg.base;
        pl.alpha1 = plan_vals["plan.alpha1"];
        pl.alpha2 = plan_vals["plan.alpha2"];
        pl.beta1 = plan_vals["plan.beta1"];
        pl.beta2 = plan_vals["plan.beta2"];
        pl.delta1 = plan_vals["plan.delta1"];
        pl.delta2 = plan_vals["plan.delta2"];
        double gap = cfg.base.alpha0 - cfg.base.beta0 -
                     0.5 * cfg.base.n * (1.0 / cfg.base.p - 1.0 / cfg.base.q);
        pl.beta1_equality_branch = std::abs(gap - 1.0) <= 1e-9;
        cfg.plan_override = pl;
    }

    for (const auto& name : check_list) {
        CheckRequest req;
        req.name = name;
        if (auto it = check_params.find(name); it != check_params.end()) req.params = it->second;
        check_params.erase(name);
        cfg.checks.push_back(req);
    }
    if (!check_params.empty())
        raise(Errc::parse_error,
              "parameters given for check '" + check_params.begin()->first +
                  "' absent from checks.list");

    cfg.validate();
    return cfg;
}

void ExperimentConfig::validate() const {
    if (bandwidth < 1) raise(Errc::invariant_violation, "operator bandwidth must be >= 1");
    if (resolution != 0 && resolution < 2 * bandwidth)
        raise(Errc::invariant_violation,
              "grid resolution must be at least twice the bandwidth (dealiasing)");
    if (!(t_end > 0.0)) raise(Errc::invariant_violation, "time t_end must be positive");
    if (!(dt > 0.0)) raise(Errc::invariant_violation, "time dt must be positive");
    if (!(tol > 0.0)) raise(Errc::invariant_violation, "solver tol must be positive");
    if (max_iter < 1) raise(Errc::invariant_violation, "solver max_iter must be >= 1");
    if (recipe != "single-mode" && recipe != "random-band" && recipe != "taylor-vortex-like")
        raise(Errc::unknown_recipe, "data recipe '" + recipe + "'");
    const bool uses_randomness = recipe == "random-band";
    if (uses_randomness && !seed_set)
        raise(Errc::invariant_violation, "data seed required whenever randomness is used");
    if (TimeGrid::from_step(t_end, dt).steps < 2)  // also checks divisibility
        raise(Errc::invariant_violation, "time grid needs at least two steps");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::parse_error, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace heatflow
