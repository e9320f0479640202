#include "heatflow/exponents.hpp"

#include <algorithm>
#include <cmath>

namespace heatflow {

bool CheckReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const auto& c) { return c.pass; });
}

std::vector<std::string> CheckReport::failed_names() const {
    std::vector<std::string> out;
    for (const auto& c : items)
        if (!c.pass) out.push_back(c.name);
    return out;
}

namespace {

void add(CheckReport& r, const std::string& name, double slack, bool strict) {
    r.items.push_back({name, strict ? slack > 0.0 : slack >= 0.0, slack, strict});
}

double gap_value(const BaseExponents& b) {
    return b.alpha0 - b.beta0 - 0.5 * b.n * (1.0 / b.p - 1.0 / b.q);
}

constexpr double kEqualityTol = 1e-9;

}  // namespace

CheckReport check_base_exponents(const BaseExponents& b) {
    CheckReport r;
    const double n = b.n;
    add(r, "p-lower", b.p - std::max(1.0, n / 3.0), true);
    add(r, "q-lower", b.q - 1.0, true);
    add(r, "grad-coupling", 1.0 / n - (1.0 / b.p - 1.0 / (2.0 * b.q)), true);
    add(r, "transport-coupling", 2.0 / n - (1.0 / b.q - 1.0 / b.p), true);
    add(r, "alpha0-floor", b.alpha0 - std::max(0.0, n / (2.0 * b.p) - 0.5), false);
    add(r, "alpha0-upper", 1.0 - b.alpha0, true);
    add(r, "beta0-floor", b.beta0, false);
    add(r, "beta0-upper", 1.0 - b.beta0, true);
    add(r, "balance",
        b.alpha0 - 0.5 * b.beta0 - 0.5 * n * (1.0 / b.p - 1.0 / (2.0 * b.q)), false);
    add(r, "gap-lower", gap_value(b) + 1.0, true);
    add(r, "gap-upper", 1.0 - gap_value(b), false);
    return r;
}

CheckReport check_regularity_exponents(const BaseExponents& b) {
    CheckReport r;
    const double n = b.n;
    add(r, "time-deriv-alpha0", b.alpha0 - n * (1.0 / b.p - 1.0 / (2.0 * b.q)), false);
    add(r, "time-deriv-beta0", b.beta0 - (n / (2.0 * b.p) - 0.5), false);
    add(r, "time-deriv-joint", 2.0 * b.alpha0 - b.beta0 - (n / (2.0 * b.p) - 0.5), false);
    add(r, "classical-p", b.p - n, true);
    add(r, "classical-q", b.q - n, true);
    add(r, "classical-coupling", -(1.0 / b.p - 1.0 / (2.0 * b.q)), false);
    add(r, "classical-window", 2.0 / n - (1.0 / b.q - 1.0 / b.p), true);
    return r;
}

namespace {

// All plan constraints in "slack >= 0 / > 0" form at a candidate point.
CheckReport plan_constraints(const ExponentPlan& pl) {
    CheckReport r;
    const BaseExponents& b = pl.base;
    const double n = b.n;
    add(r, "va-delta1-floor", pl.delta1, false);
    add(r, "va-delta1-window", 0.5 + 0.5 * n * (1.0 - 1.0 / b.p) - pl.delta1, true);
    add(r, "va-alpha1-positive", pl.alpha1, true);
    add(r, "va-alpha1-above-base", pl.alpha1 - b.alpha0, true);
    add(r, "va-alpha1-cap", 1.0 - pl.delta1 - pl.alpha1, true);
    add(r, "va-gradient-pairing", pl.alpha1 + pl.delta1 - 0.5, true);
    add(r, "va-product-floor", 2.0 * pl.alpha1 + pl.delta1 - (n / (2.0 * b.p) + 0.5), false);
    add(r, "va-sum-rule", 1.0 + b.alpha0 - (2.0 * pl.alpha1 + pl.delta1), false);

    add(r, "ta-delta2-floor", pl.delta2, false);
    add(r, "ta-delta2-window", 0.5 + 0.5 * n * (1.0 - 1.0 / b.q) - pl.delta2, true);
    add(r, "ta-alpha2-above-base", pl.alpha2 - b.alpha0, true);
    add(r, "ta-alpha2-cap", 1.0 - pl.delta1 - pl.alpha2, true);
    add(r, "ta-alpha2-transport", pl.alpha2 - 0.5 * n * (1.0 / b.p - 1.0 / b.q), true);
    add(r, "ta-beta2-above-base", pl.beta2 - b.beta0, true);
    add(r, "ta-beta2-cap", 1.0 - pl.delta2 - pl.beta2, true);
    add(r, "ta-beta2-pairing", pl.beta2 + pl.delta2 - 0.5, true);
    add(r, "ta-product-floor",
        pl.alpha2 + pl.beta2 + pl.delta2 - (n / (2.0 * b.p) + 0.5), false);
    add(r, "ta-sum-rule", 1.0 + b.alpha0 - (pl.alpha2 + pl.beta2 + pl.delta2), false);

    add(r, "vh-alpha2-floor",
        pl.alpha2 - std::max(0.0, 0.5 + 0.5 * n * (1.0 / b.p - 1.0 / (2.0 * b.q))), false);
    add(r, "vh-alpha2-one", 1.0 - pl.alpha2, false);
    add(r, "vh-sum-rule", b.alpha0 + 0.5 * (1.0 - b.beta0) - pl.alpha2, false);

    add(r, "fo-beta1-above-base", pl.beta1 - b.beta0, true);
    add(r, "fo-beta1-cap", 1.0 - pl.delta2 - pl.beta1, true);
    add(r, "fo-beta1-floor",
        pl.beta1 - std::max(0.0, 0.5 * n * (1.0 / b.q - 1.0 / b.p)), false);
    add(r, "fo-beta1-one", 1.0 - pl.beta1, false);
    if (pl.beta1_equality_branch) {
        add(r, "fo-beta1-pinned",
            kEqualityTol - std::abs(pl.beta1 - (1.0 - b.alpha0 + b.beta0)), false);
    } else {
        add(r, "fo-beta1-window", 1.0 - b.alpha0 + b.beta0 - pl.beta1, true);
    }
    return r;
}

constexpr double kGridStep = 1.0 / 256.0;

// String-free slack evaluators used inside the search loops. Each returns
// min(strict slacks - margin, closed slacks): the objective is the minimum
// of linear functions of the scanned exponents, hence concave, so a dense
// grid plus coordinate-wise step-halving ascent reaches its maximum.
double score_va(const BaseExponents& b, double d1, double a1, double margin) {
    const double n = b.n;
    double s = std::min({a1 - margin, a1 - b.alpha0 - margin, 1.0 - d1 - a1 - margin,
                         a1 + d1 - 0.5 - margin});
    s = std::min(s, 2.0 * a1 + d1 - (n / (2.0 * b.p) + 0.5));
    s = std::min(s, 1.0 + b.alpha0 - (2.0 * a1 + d1));
    return s;
}

double score_ta_vh(const BaseExponents& b, double d1, double d2, double a2, double b2,
                   double margin) {
    const double n = b.n;
    double s = std::min({a2 - b.alpha0 - margin, 1.0 - d1 - a2 - margin,
                         a2 - 0.5 * n * (1.0 / b.p - 1.0 / b.q) - margin,
                         b2 - b.beta0 - margin, 1.0 - d2 - b2 - margin,
                         b2 + d2 - 0.5 - margin});
    s = std::min(s, a2 + b2 + d2 - (n / (2.0 * b.p) + 0.5));
    s = std::min(s, 1.0 + b.alpha0 - (a2 + b2 + d2));
    s = std::min(s, a2 - std::max(0.0, 0.5 + 0.5 * n * (1.0 / b.p - 1.0 / (2.0 * b.q))));
    s = std::min(s, 1.0 - a2);
    s = std::min(s, b.alpha0 + 0.5 * (1.0 - b.beta0) - a2);
    return s;
}

double score_fo(const BaseExponents& b, double d2, double b1, double margin, bool pinned) {
    const double n = b.n;
    double s = std::min({b1 - b.beta0 - margin, 1.0 - d2 - b1 - margin});
    s = std::min(s, b1 - std::max(0.0, 0.5 * n * (1.0 / b.q - 1.0 / b.p)));
    s = std::min(s, 1.0 - b1);
    if (!pinned) s = std::min(s, 1.0 - b.alpha0 + b.beta0 - b1 - margin);
    return s;
}

// Dense scan over (lo, hi) plus window-relative fallbacks (tight feasible
// slivers can fall between 1/256 grid points), then step-halving ascent.
template <class Score>
double axis_search(double lo, double hi, Score&& score) {
    std::vector<double> candidates;
    for (double v = std::ceil(lo / kGridStep) * kGridStep; v < hi; v += kGridStep)
        if (v > lo) candidates.push_back(v);
    for (int i = 1; i < 32; ++i) candidates.push_back(lo + (hi - lo) * i / 32.0);
    double best = candidates.front(), best_score = -1e300;
    for (double c : candidates) {
        double s = score(c);
        if (s > best_score + 1e-15 || (std::abs(s - best_score) <= 1e-15 && c < best)) {
            best_score = s;
            best = c;
        }
    }
    double step = (hi - lo) / 8.0;
    for (int it = 0; it < 60; ++it) {
        for (double c : {best - step, best + step})
            if (c > lo && c < hi && score(c) > score(best)) best = c;
        step *= 0.5;
    }
    return best;
}

}  // namespace

PlanOutcome plan_exponents(const BaseExponents& base, double margin, double delta_default) {
    PlanOutcome out;
    CheckReport gate = check_base_exponents(base);
    if (!gate.all_pass()) {
        out.report = gate;
        return out;
    }

    ExponentPlan pl;
    pl.base = base;
    pl.delta1 = base.alpha0 > 0.0 ? 0.0 : delta_default;
    pl.delta2 = base.beta0 > 0.0 ? 0.0 : delta_default;
    pl.beta1_equality_branch = std::abs(gap_value(base) - 1.0) <= kEqualityTol;

    pl.alpha1 = axis_search(base.alpha0, 1.0 - pl.delta1, [&](double a1) {
        return score_va(base, pl.delta1, a1, margin);
    });

    // (alpha2, beta2) are coupled through the sum rule: coarse joint grid,
    // then alternating one-dimensional ascents.
    {
        double ba = 0.5 * (base.alpha0 + 1.0 - pl.delta1);
        double bb = 0.5 * (base.beta0 + 1.0 - pl.delta2);
        double best = -1e300;
        for (int i = 1; i < 48; ++i)
            for (int j = 1; j < 48; ++j) {
                double a2 = base.alpha0 + (1.0 - pl.delta1 - base.alpha0) * i / 48.0;
                double b2 = base.beta0 + (1.0 - pl.delta2 - base.beta0) * j / 48.0;
                double s = score_ta_vh(base, pl.delta1, pl.delta2, a2, b2, margin);
                if (s > best + 1e-15 ||
                    (std::abs(s - best) <= 1e-15 && a2 + b2 < ba + bb)) {
                    best = s;
                    ba = a2;
                    bb = b2;
                }
            }
        for (int round = 0; round < 8; ++round) {
            ba = axis_search(base.alpha0, 1.0 - pl.delta1, [&](double a2) {
                return score_ta_vh(base, pl.delta1, pl.delta2, a2, bb, margin);
            });
            bb = axis_search(base.beta0, 1.0 - pl.delta2, [&](double b2) {
                return score_ta_vh(base, pl.delta1, pl.delta2, ba, b2, margin);
            });
        }
        pl.alpha2 = ba;
        pl.beta2 = bb;
    }

    if (pl.beta1_equality_branch) {
        pl.beta1 = 1.0 - base.alpha0 + base.beta0;
    } else {
        pl.beta1 = axis_search(base.beta0, 1.0 - pl.delta2, [&](double b1) {
            return score_fo(base, pl.delta2, b1, margin, false);
        });
    }

    out.report = plan_constraints(pl);
    out.min_slack = 1e300;
    bool feasible = true;
    for (const auto& c : out.report.items) {
        if (c.strict) {
            out.min_slack = std::min(out.min_slack, c.slack);
            if (!c.pass || c.slack < margin) feasible = false;
        } else if (!c.pass) {
            feasible = false;
        }
    }
    if (feasible) out.plan = pl;
    return out;
}

double beta_function(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) raise(Errc::domain_error, "beta function needs x, y > 0");
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double semigroup_envelope_at(double alpha, double lambda, double t) {
    if (alpha < 0.0) raise(Errc::invalid_exponent, "alpha must be >= 0");
    if (!(lambda >= 0.0) || lambda >= 2.0) raise(Errc::invalid_rate, "need 0 <= lambda < 2");
    if (!(t > 0.0)) raise(Errc::invalid_time, "t must be positive");
    if (alpha == 0.0) return std::exp(-(2.0 - lambda) * t);
    // sup over mu >= 2 of (mu t)^alpha e^{-(mu-lambda)t}: interior maximum at
    // mu = alpha/t when that clears the spectral floor.
    if (alpha / t >= 2.0) return std::pow(alpha, alpha) * std::exp(-alpha + lambda * t);
    return std::pow(2.0 * t, alpha) * std::exp(-(2.0 - lambda) * t);
}

double semigroup_envelope(double alpha, double lambda) {
    if (alpha < 0.0) raise(Errc::invalid_exponent, "alpha must be >= 0");
    if (!(lambda >= 0.0) || lambda >= 2.0) raise(Errc::invalid_rate, "need 0 <= lambda < 2");
    if (alpha == 0.0) return 1.0;
    return std::pow(2.0 * alpha / (2.0 - lambda), alpha) * std::exp(-alpha);
}

GrowthConstants default_growth_constants(double lambda) {
    GrowthConstants g;
    g.c_A = [lambda](double a) { return semigroup_envelope(a, lambda); };
    g.c_B = [lambda](double b) { return semigroup_envelope(b, lambda); };
    return g;
}

double InitialBounds::max(double t) const {
    return std::max(std::max(k1_alpha1(t), k1_alpha2(t)),
                    std::max(k2_beta1(t), k2_beta2(t)));
}

double IterateBounds::max() const {
    return std::max(std::max(k1_alpha1, k1_alpha2), std::max(k2_beta1, k2_beta2));
}

namespace {

double checked_beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        raise(Errc::plan_error, "bound recursion: beta-function argument not positive");
    return beta_function(x, y);
}

}  // namespace

IterateBounds k_recursion(const ExponentPlan& pl, const GrowthConstants& gc,
                          const InitialBounds& k0, double t, int m) {
    if (m < 0) raise(Errc::invalid_exponent, "recursion depth must be >= 0");
    if (!(t >= 0.0)) raise(Errc::invalid_time, "t must be >= 0");
    const BaseExponents& b = pl.base;

    IterateBounds cur{k0.k1_alpha1(t), k0.k1_alpha2(t), k0.k2_beta1(t), k0.k2_beta2(t)};
    if (m == 0) return cur;

    auto u_step = [&](double alpha, const IterateBounds& prev, double base_value) {
        double quad = gc.c_A(alpha + pl.delta1) * gc.c1 *
                      checked_beta(1.0 - (alpha + pl.delta1), 1.0 + 2.0 * (b.alpha0 - pl.alpha1)) *
                      prev.k1_alpha1 * prev.k1_alpha1 *
                      std::pow(t, 1.0 + b.alpha0 - 2.0 * pl.alpha1 - pl.delta1);
        double forc = gc.c_A(alpha) * gc.c4 * gc.lf *
                      checked_beta(1.0 - alpha, 1.0 + b.beta0 - pl.beta1) * prev.k2_beta1 *
                      std::pow(t, 1.0 + b.beta0 - b.alpha0 - pl.beta1);
        return base_value + quad + forc;
    };
    auto th_step = [&](double beta, const IterateBounds& prev, double base_value) {
        double cross = gc.c_B(beta + pl.delta2) * gc.c2 *
                       checked_beta(1.0 - (beta + pl.delta2),
                                    1.0 + b.alpha0 + b.beta0 - pl.alpha2 - pl.beta2) *
                       prev.k1_alpha2 * prev.k2_beta2 *
                       std::pow(t, 1.0 + b.alpha0 - pl.alpha2 - pl.beta2 - pl.delta2);
        double heat = gc.c_B(beta) * gc.c3 *
                      checked_beta(1.0 - beta, 1.0 + 2.0 * (b.alpha0 - pl.alpha2)) *
                      prev.k1_alpha2 * prev.k1_alpha2 *
                      std::pow(t, 1.0 + 2.0 * b.alpha0 - b.beta0 - 2.0 * pl.alpha2);
        return base_value + cross + heat;
    };

    IterateBounds base = cur;
    for (int sweep = 0; sweep < m; ++sweep) {
        IterateBounds next;
        next.k1_alpha1 = u_step(pl.alpha1, cur, base.k1_alpha1);
        next.k1_alpha2 = u_step(pl.alpha2, cur, base.k1_alpha2);
        next.k2_beta1 = th_step(pl.beta1, cur, base.k2_beta1);
        next.k2_beta2 = th_step(pl.beta2, cur, base.k2_beta2);
        cur = next;
    }
    return cur;
}

LocalTimeEstimate estimate_local_time(const ExponentPlan& pl, const GrowthConstants&,
                                      const InitialBounds& k0, double aggregate_constant,
                                      double t_max) {
    if (!(aggregate_constant > 0.0)) raise(Errc::degenerate_constants, "constant must be > 0");
    if (!(t_max > 0.0)) raise(Errc::invalid_time, "t_max must be positive");
    const BaseExponents& b = pl.base;
    const double power = 1.0 + b.beta0 - b.alpha0 - pl.beta1;
    auto contraction = [&](double t) {
        double k = k0.max(t);
        if (pl.beta1_equality_branch) return aggregate_constant * k;
        return aggregate_constant * (k + std::pow(t, power));
    };
    const double target = 1.0 - 0.05;
    const double t_min = t_max * std::pow(2.0, -48);
    if (contraction(t_min) > target)
        raise(Errc::degenerate_constants, "no contraction time above resolvable scale");
    if (contraction(t_max) <= target) return {t_max, 1.0 - contraction(t_max)};
    double lo = t_min, hi = t_max;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        (contraction(mid) <= target ? lo : hi) = mid;
    }
    return {lo, 1.0 - contraction(lo)};
}

}  // namespace heatflow
