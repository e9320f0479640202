#include "heatflow/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace heatflow {

using nlohmann::json;

namespace {

json field_json(const char* kind, const detail::CoeffArray& f) {
    json j;
    j["kind"] = kind;
    j["bandwidth"] = f.bandwidth();
    j["coeffs"] = std::vector<double>(f.coeffs().begin(), f.coeffs().end());
    return j;
}

template <class Field>
Field field_from_json(const std::string& text, const char* kind) {
    json j = json::parse(text);
    if (j.at("kind").get<std::string>() != kind)
        raise(Errc::parse_error, std::string("expected kind '") + kind + "'");
    int K = j.at("bandwidth").get<int>();
    auto coeffs = j.at("coeffs").get<std::vector<double>>();
    if (coeffs.size() != static_cast<std::size_t>(K) * K)
        raise(Errc::parse_error, "coefficient count does not match bandwidth");
    Field f(K);
    std::copy(coeffs.begin(), coeffs.end(), f.coeffs().begin());
    return f;
}

}  // namespace

std::string to_json(const ScalarField& f) { return field_json("temperature", f).dump(); }
std::string to_json(const VelocityField& f) { return field_json("velocity", f).dump(); }

ScalarField scalar_from_json(const std::string& text) {
    return field_from_json<ScalarField>(text, "temperature");
}
VelocityField velocity_from_json(const std::string& text) {
    return field_from_json<VelocityField>(text, "velocity");
}

std::string to_csv(const GridField& g) {
    std::ostringstream os;
    os.precision(17);
    os << (g.arity() == 1 ? "x,y,v\n" : "x,y,v1,v2\n");
    for (int i = 1; i <= g.resolution(); ++i)
        for (int j = 1; j <= g.resolution(); ++j) {
            os << g.node(i) << ',' << g.node(j) << ',' << g.value(0, i, j);
            if (g.arity() == 2) os << ',' << g.value(1, i, j);
            os << '\n';
        }
    return os.str();
}

GridField grid_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) raise(Errc::parse_error, "empty csv");
    int arity = line == "x,y,v" ? 1 : line == "x,y,v1,v2" ? 2 : 0;
    if (arity == 0) raise(Errc::parse_error, "unrecognized csv header '" + line + "'");
    std::vector<std::array<double, 4>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, 4> row{};
        std::stringstream ss(line);
        std::string cell;
        for (int c = 0; c < 2 + arity; ++c) {
            if (!std::getline(ss, cell, ',')) raise(Errc::parse_error, "short csv row");
            row[c] = std::stod(cell);
        }
        rows.push_back(row);
    }
    int n = int(std::lround(std::sqrt(double(rows.size()))));
    if (static_cast<std::size_t>(n) * n != rows.size())
        raise(Errc::parse_error, "csv does not hold a square grid");
    GridField g(n, arity);
    std::size_t r = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j, ++r) {
            g.value(0, i, j) = rows[r][2];
            if (arity == 2) g.value(1, i, j) = rows[r][3];
        }
    return g;
}

std::string to_json(const ExponentPlan& pl) {
    json j;
    j["n"] = pl.base.n;
    j["p"] = pl.base.p;
    j["q"] = pl.base.q;
    j["alpha0"] = pl.base.alpha0;
    j["beta0"] = pl.base.beta0;
    j["delta1"] = pl.delta1;
    j["delta2"] = pl.delta2;
    j["alpha1"] = pl.alpha1;
    j["alpha2"] = pl.alpha2;
    j["beta1"] = pl.beta1;
    j["beta2"] = pl.beta2;
    j["beta1_equality_branch"] = pl.beta1_equality_branch;
    return j.dump(2);
}

ExponentPlan plan_from_json(const std::string& text) {
    json j = json::parse(text);
    ExponentPlan pl;
    pl.base.n = j.at("n").get<int>();
    pl.base.p = j.at("p").get<double>();
    pl.base.q = j.at("q").get<double>();
    pl.base.alpha0 = j.at("alpha0").get<double>();
    pl.base.beta0 = j.at("beta0").get<double>();
    pl.delta1 = j.at("delta1").get<double>();
    pl.delta2 = j.at("delta2").get<double>();
    pl.alpha1 = j.at("alpha1").get<double>();
    pl.alpha2 = j.at("alpha2").get<double>();
    pl.beta1 = j.at("beta1").get<double>();
    pl.beta2 = j.at("beta2").get<double>();
    pl.beta1_equality_branch = j.at("beta1_equality_branch").get<bool>();
    return pl;
}

std::string to_json(const CheckReport& report) {
    json items = json::array();
    for (const auto& c : report.items) {
        items.push_back(
            {{"name", c.name}, {"pass", c.pass}, {"slack", c.slack}, {"strict", c.strict}});
    }
    json j;
    j["all_pass"] = report.all_pass();
    j["items"] = items;
    return j.dump(2);
}

std::string to_json(const EstimateReport& report) {
    json j;
    j["name"] = report.name;
    j["constant"] = report.constant;
    j["samples"] = report.samples;
    j["bandwidth"] = report.bandwidth;
    j["stable"] = report.stable;
    j["seed"] = report.seed;
    if (std::isfinite(report.reference)) j["reference"] = report.reference;
    return j.dump(2);
}

std::string to_json(const GronwallSpec& spec) {
    json j;
    j["horizon"] = spec.horizon;
    json a = json::array(), b = json::array();
    for (const auto& t : spec.a) a.push_back({t.coef, t.exponent});
    for (const auto& t : spec.b) b.push_back({t.coef, t.exponent});
    j["a"] = a;
    j["b"] = b;
    return j.dump(2);
}

GronwallSpec gronwall_spec_from_json(const std::string& text) {
    json j = json::parse(text);
    GronwallSpec s;
    s.horizon = j.at("horizon").get<double>();
    for (const auto& t : j.at("a")) s.a.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
    for (const auto& t : j.at("b")) s.b.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
    s.validate();
    return s;
}

namespace {

json record_payload(const RunRecord& rec) {
    json j;
    j["config"] = rec.config_text;
    j["plan"] = json::parse(to_json(rec.plan));
    j["t"] = rec.t;
    j["u_l2"] = rec.u_l2;
    j["theta_l2"] = rec.theta_l2;
    j["u_xalpha0"] = rec.u_xalpha0;
    j["theta_ybeta0"] = rec.theta_ybeta0;
    if (!rec.norm_alphas.empty()) {
        j["norm_alphas"] = rec.norm_alphas;
        j["u_xextra"] = rec.u_xextra;
    }
    json checks = json::array();
    for (const auto& c : rec.checks)
        checks.push_back(
            {{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"detail", c.detail}});
    j["checks"] = checks;
    j["stage_error"] = rec.stage_error;
    j["tool_version"] = rec.tool_version;
    return j;
}

}  // namespace

std::string to_json(const RunRecord& rec) {
    json j = record_payload(rec);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(rec.content_hash));
    j["content_hash"] = hash;
    j["wall_seconds"] = rec.wall_seconds;  // excluded from the hash
    return j.dump(2);
}

std::string norm_series_csv(const RunRecord& rec) {
    std::ostringstream os;
    os.precision(17);
    os << "t,u_l2,theta_l2,u_xalpha0,theta_ybeta0";
    for (double a : rec.norm_alphas) os << ",u_x" << a;
    os << '\n';
    for (std::size_t i = 0; i < rec.t.size(); ++i) {
        os << rec.t[i] << ',' << rec.u_l2[i] << ',' << rec.theta_l2[i] << ',' << rec.u_xalpha0[i]
           << ',' << rec.theta_ybeta0[i];
        for (const auto& series : rec.u_xextra) os << ',' << series[i];
        os << '\n';
    }
    return os.str();
}

std::uint64_t content_hash(const RunRecord& rec) {
    // FNV-1a over the canonical payload dump; timings and the hash itself are
    // excluded so reruns with identical numerics hash identically.
    std::string payload = record_payload(rec).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_snapshot(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "exponents.n = " << cfg.base.n << "\n";
    os << "exponents.p = " << cfg.base.p << "\n";
    os << "exponents.q = " << cfg.base.q << "\n";
    os << "exponents.alpha0 = " << cfg.base.alpha0 << "\n";
    os << "exponents.beta0 = " << cfg.base.beta0 << "\n";
    os << "operator.bandwidth = " << cfg.bandwidth << "\n";
    if (cfg.resolution > 0) os << "grid.resolution = " << cfg.resolution << "\n";
    os << "time.t_end = " << cfg.t_end << "\n";
    os << "time.dt = " << cfg.dt << "\n";
    os << "forcing.law = " << cfg.law_name << "\n";
    os << "forcing.parameter = " << cfg.law_param << "\n";
    os << "data.recipe = " << cfg.recipe << "\n";
    os << "data.u_norm = " << cfg.u_target << "\n";
    os << "data.theta_norm = " << cfg.theta_target << "\n";
    os << "data.damping = " << cfg.damping << "\n";
    if (cfg.seed_set) os << "data.seed = " << cfg.seed << "\n";
    os << "solver.mode = " << to_string(cfg.mode) << "\n";
    os << "solver.tol = " << cfg.tol << "\n";
    os << "solver.max_iter = " << cfg.max_iter << "\n";
    os << "plan.margin = " << cfg.plan_margin << "\n";
    if (cfg.plan_override) {
        os << "plan.alpha1 = " << cfg.plan_override->alpha1 << "\n";
        os << "plan.alpha2 = " << cfg.plan_override->alpha2 << "\n";
        os << "plan.beta1 = " << cfg.plan_override->beta1 << "\n";
        os << "plan.beta2 = " << cfg.plan_override->beta2 << "\n";
        os << "plan.delta1 = " << cfg.plan_override->delta1 << "\n";
        os << "plan.delta2 = " << cfg.plan_override->delta2 << "\n";
    }
    if (!cfg.checks.empty()) {
        os << "checks.list = ";
        for (std::size_t i = 0; i < cfg.checks.size(); ++i)
            os << (i ? "," : "") << cfg.checks[i].name;
        os << "\n";
        for (const auto& c : cfg.checks)
            for (const auto& [k, v] : c.params)
                os << "checks." << c.name << "." << k << " = " << v << "\n";
    }
    if (!cfg.out_dir.empty()) os << "output.dir = " << cfg.out_dir << "\n";
    if (cfg.dump_coefficients) os << "output.dump_coefficients = true\n";
    if (!cfg.norm_alphas.empty()) {
        os << "output.norm_alphas = ";
        for (std::size_t i = 0; i < cfg.norm_alphas.size(); ++i)
            os << (i ? "," : "") << cfg.norm_alphas[i];
        os << "\n";
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::parse_error, "cannot open '" + path + "' for writing");
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::parse_error, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace heatflow
