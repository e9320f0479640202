#include "heatflow/gronwall.hpp"

#include <cmath>
#include <limits>

#include "heatflow/exponents.hpp"

namespace heatflow {

void GronwallSpec::validate() const {
    if (a.empty() || b.empty()) raise(Errc::domain_error, "term lists must be nonempty");
    if (!(horizon > 0.0)) raise(Errc::invalid_time, "horizon must be positive");
    for (const auto& t : a)
        if (!(t.coef > 0.0) || t.exponent < 0.0 || t.exponent >= 1.0)
            raise(Errc::domain_error, "forcing terms need coef > 0 and exponent in [0,1)");
    for (const auto& t : b)
        if (!(t.coef >= 0.0) || t.exponent < 0.0 || t.exponent >= 1.0)
            raise(Errc::domain_error, "kernel terms need coef >= 0 and exponent in [0,1)");
}

namespace {

double forcing_at(const GronwallSpec& s, double t) {
    double v = 0.0;
    for (const auto& term : s.a)
        v += term.exponent > 0.0 ? term.coef * std::pow(t, -term.exponent) : term.coef;
    return v;
}

}  // namespace

double gronwall_bound(const GronwallSpec& spec, double big_c, double t) {
    spec.validate();
    if (!(t > 0.0) || t > spec.horizon) raise(Errc::domain_error, "t must lie in (0, horizon]");
    if (!(big_c > 0.0)) raise(Errc::domain_error, "constant must be positive");
    double beta_max = 0.0;
    for (const auto& term : spec.b) beta_max = std::max(beta_max, term.exponent);
    const int n_beta = int(beta_max / (1.0 - beta_max)) + 1;

    double bsum = 0.0;
    for (const auto& term : spec.b) bsum += term.coef * std::pow(t, 1.0 - term.exponent);

    double geom = 0.0;  // sum_{k=0}^{n_beta} bsum^k
    double pw = 1.0;
    for (int k = 0; k <= n_beta; ++k) {
        geom += pw;
        pw *= bsum;
    }
    const double btop = pw;  // bsum^{n_beta+1}
    const double expo_arg = big_c * btop;
    double env =
        expo_arg > 700.0 ? std::numeric_limits<double>::infinity() : 1.0 + btop * std::exp(expo_arg);
    return big_c * forcing_at(spec, t) * env * geom;
}

std::vector<double> volterra_nodes(const GronwallSpec& spec, int nodes) {
    std::vector<double> t(nodes);
    for (int i = 1; i <= nodes; ++i) t[i - 1] = spec.horizon * i / nodes;
    return t;
}

std::vector<double> volterra_oracle(const GronwallSpec& spec, int nodes) {
    spec.validate();
    if (nodes < 16) raise(Errc::domain_error, "need at least 16 nodes");
    const int M = nodes;
    const double dt = spec.horizon / M;

    // Split y = forcing + w. Each forcing convolution is a beta function:
    //   int_0^t (t-s)^{-be} s^{-al} ds = B(1-be, 1-al) t^{1-al-be},
    // so w solves a Volterra equation with continuous data when
    // al + be <= 1 (the only regime supported here).
    double w0 = 0.0;
    for (const auto& kb : spec.b)
        for (const auto& fa : spec.a) {
            double e = 1.0 - fa.exponent - kb.exponent;
            if (e < -1e-14)
                raise(Errc::oracle_failure, "forcing/kernel exponents exceed the solvable range");
            if (std::abs(e) <= 1e-14)
                w0 += kb.coef * fa.coef * beta_function(1.0 - kb.exponent, 1.0 - fa.exponent);
        }
    auto smooth_forcing = [&](double t) {
        double v = 0.0;
        for (const auto& kb : spec.b)
            for (const auto& fa : spec.a) {
                double e = 1.0 - fa.exponent - kb.exponent;
                v += kb.coef * fa.coef * beta_function(1.0 - kb.exponent, 1.0 - fa.exponent) *
                     std::pow(t, e);
            }
        return v;
    };

    // Uniform mesh: the product-integration panel moments depend only on the
    // node distance d = i - j, so precompute them per kernel term.
    //   m0[d] = int_{d dt}^{(d+1) dt} u^{-be} du
    //   m1[d] = int over the same panel of u^{-be} (u1 - u)/dt, u1 = (d+1) dt
    // (m1 weights the panel's left node under s -> t - u.)
    struct Moments {
        std::vector<double> m0, m1;
        double coef;
    };
    std::vector<Moments> mom;
    for (const auto& kb : spec.b) {
        Moments m;
        m.coef = kb.coef;
        m.m0.resize(M);
        m.m1.resize(M);
        const double be = kb.exponent;
        for (int d = 0; d < M; ++d) {
            double u0 = d * dt, u1 = (d + 1) * dt;
            double p0 = (std::pow(u1, 1.0 - be) - std::pow(u0, 1.0 - be)) / (1.0 - be);
            double p1 = (std::pow(u1, 2.0 - be) - std::pow(u0, 2.0 - be)) / (2.0 - be);
            m.m0[d] = p0;
            m.m1[d] = (u1 * p0 - p1) / dt;
        }
        mom.push_back(std::move(m));
    }

    std::vector<double> w(M + 1, 0.0);
    w[0] = w0;
    for (int i = 1; i <= M; ++i) {
        double rhs = smooth_forcing(i * dt);
        double diag = 0.0;
        for (const auto& m : mom) {
            // Panel j covers [t_{j-1}, t_j]; under u = t_i - s the hat of the
            // right node integrates to m1, the left node takes m0 - m1.
            for (int j = 1; j < i; ++j) {
                int d = i - j;
                rhs += m.coef * (w[j - 1] * (m.m0[d] - m.m1[d]) + w[j] * m.m1[d]);
            }
            rhs += m.coef * w[i - 1] * (m.m0[0] - m.m1[0]);
            diag += m.coef * m.m1[0];
        }
        if (1.0 - diag <= 1e-12)
            raise(Errc::oracle_failure, "node equation not solvable; refine the mesh");
        w[i] = rhs / (1.0 - diag);
        if (!std::isfinite(w[i])) raise(Errc::oracle_failure, "oracle diverged");
    }

    std::vector<double> y(M);
    for (int i = 1; i <= M; ++i) y[i - 1] = forcing_at(spec, i * dt) + w[i];
    return y;
}

std::optional<double> find_dominating_constant(const GronwallSpec& spec, int nodes) {
    std::vector<double> y = volterra_oracle(spec, nodes);
    std::vector<double> t = volterra_nodes(spec, nodes);
    for (int k = 0; k <= 60; ++k) {
        double c = std::ldexp(1.0, k);
        bool ok = true;
        for (std::size_t i = 0; i < y.size() && ok; ++i)
            ok = gronwall_bound(spec, c, t[i]) >= y[i] * (1.0 - 1e-12);
        if (ok) return c;
    }
    return std::nullopt;
}

}  // namespace heatflow
