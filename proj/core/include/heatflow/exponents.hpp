#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "heatflow/errors.hpp"

namespace heatflow {

/// Integrability/regularity indices of the data spaces: u0 in X^{alpha0}_p,
/// theta0 in Y^{beta0}_q, dimension n >= 2.
struct BaseExponents {
    int n = 2;
    double p = 2.0;
    double q = 2.0;
    double alpha0 = 0.5;
    double beta0 = 0.5;
};

struct ConstraintCheck {
    std::string name;
    bool pass = false;
    double slack = 0.0;  // >= 0 iff satisfied; distance to the boundary
    bool strict = false; // open inequality (needs slack > 0)
};

struct CheckReport {
    std::vector<ConstraintCheck> items;
    bool all_pass() const;
    std::vector<std::string> failed_names() const;
};

/// Itemized verdicts for the admissibility of (n, p, q, alpha0, beta0):
/// p and q windows, the two p-q coupling inequalities, the alpha0 floor,
/// the alpha0/beta0 balance and the +-1 window.
CheckReport check_base_exponents(const BaseExponents& base);

/// Itemized verdicts for the stronger regularity regimes: the
/// time-derivative conditions and the classical-solution index window
/// (p, q > n with 1/p <= 1/(2q)).
CheckReport check_regularity_exponents(const BaseExponents& base);

/// Auxiliary exponents used by the bilinear-estimate bookkeeping. delta1 = 0
/// iff alpha0 > 0 and delta2 = 0 iff beta0 > 0; alpha1, alpha2 lie in
/// (alpha0, 1-delta1), beta1, beta2 in (beta0, 1-delta2), subject to the
/// estimate preconditions and the sum rules. When the +-1 window sits at its
/// upper endpoint, beta1 is pinned to 1 - alpha0 + beta0 (equality branch).
struct ExponentPlan {
    BaseExponents base;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    bool beta1_equality_branch = false;
};

struct PlanOutcome {
    std::optional<ExponentPlan> plan;
    CheckReport report;   // all constraints at the selected point (or the gate failures)
    double min_slack = 0.0;  // minimum slack over the strict constraints
};

/// Deterministic feasibility search: delta defaults per the rule above, then
/// a 1/256 grid refined by bisection maximizes the minimum slack of the
/// strict constraints, requiring slack >= margin; ties prefer smaller
/// alpha1+alpha2+beta1+beta2. Infeasibility reports the binding constraints.
PlanOutcome plan_exponents(const BaseExponents& base, double margin = 0.0,
                           double delta_default = 0.05);

/// Independent re-validation of a plan (separate transcription of every
/// constraint; see plan_recheck.cpp).
CheckReport revalidate_plan(const ExponentPlan& plan);

/// Euler beta function via log-gamma; arguments must be positive.
double beta_function(double x, double y);

/// Closed-form diagonal smoothing envelope on a spectrum bounded below by 2:
/// per-time value sup_{mu >= 2} (mu t)^alpha e^{-(mu - lambda) t} and its
/// supremum over t > 0. Requires alpha >= 0 and 0 <= lambda < 2.
double semigroup_envelope_at(double alpha, double lambda, double t);
double semigroup_envelope(double alpha, double lambda);

/// Semigroup/estimate constants feeding the bound recursion. c_A and c_B
/// give the smoothing constants as functions of the exponent at a fixed
/// rate lambda; defaults come from the closed-form diagonal envelope.
struct GrowthConstants {
    std::function<double(double)> c_A;
    std::function<double(double)> c_B;
    double c1 = 1.0;  // velocity advection
    double c2 = 1.0;  // temperature advection
    double c3 = 1.0;  // viscous heating
    double c4 = 1.0;  // forcing
    double lf = 1.0;  // forcing Lipschitz constant
};

GrowthConstants default_growth_constants(double lambda);

/// Majorant functions for the free parts, monotone with value 0 at t = 0.
struct InitialBounds {
    std::function<double(double)> k1_alpha1;
    std::function<double(double)> k1_alpha2;
    std::function<double(double)> k2_beta1;
    std::function<double(double)> k2_beta2;
    double max(double t) const;
};

struct IterateBounds {
    double k1_alpha1 = 0.0;
    double k1_alpha2 = 0.0;
    double k2_beta1 = 0.0;
    double k2_beta2 = 0.0;
    double max() const;
};

/// Evaluates the majorant recursion for the successive approximation at time
/// t and sweep m: each step adds the beta-function-weighted quadratic terms
/// to the free-part bound. m = 0 returns the initial bounds; the sequence is
/// monotone in m and in t. Inconsistent plans (beta-function arguments
/// hitting zero) raise plan_error.
IterateBounds k_recursion(const ExponentPlan& plan, const GrowthConstants& consts,
                          const InitialBounds& k0, double t, int m);

struct LocalTimeEstimate {
    double t1 = 0.0;
    double margin = 0.0;  // 1 - contraction factor at t1
};

/// Largest time with contraction margin >= 0.05 for the iteration map, found
/// by bisection on [0, t_max]: the contraction factor is
/// C (K0(t) + t^{1+beta0-alpha0-beta1}) in the generic branch and C K0(t) in
/// the equality branch. Monotone non-increasing in C and in K0. Raises
/// degenerate_constants when no time qualifies.
LocalTimeEstimate estimate_local_time(const ExponentPlan& plan, const GrowthConstants& consts,
                                      const InitialBounds& k0, double aggregate_constant,
                                      double t_max);

}  // namespace heatflow
