// Independent re-validation of exponent plans. This file deliberately
// re-derives every inequality from scratch rather than calling the planner's
// helpers, so a bookkeeping bug in one path cannot hide in the other.

#include <cmath>

#include "heatflow/exponents.hpp"

namespace heatflow {

namespace {

void put(CheckReport& r, const char* name, bool ok) { r.items.push_back({name, ok, 0.0, false}); }

}  // namespace

CheckReport revalidate_plan(const ExponentPlan& pl) {
    CheckReport r;
    const double n = pl.base.n;
    const double p = pl.base.p;
    const double q = pl.base.q;
    const double a0 = pl.base.alpha0;
    const double b0 = pl.base.beta0;
    const double d1 = pl.delta1;
    const double d2 = pl.delta2;
    const double a1 = pl.alpha1;
    const double a2 = pl.alpha2;
    const double b1 = pl.beta1;
    const double b2 = pl.beta2;

    // Base admissibility.
    put(r, "recheck-p", p > 1.0 && p > n / 3.0);
    put(r, "recheck-q", q > 1.0);
    put(r, "recheck-grad", 1.0 / p - 1.0 / (2.0 * q) < 1.0 / n);
    put(r, "recheck-transport", 1.0 / q - 1.0 / p < 2.0 / n);
    put(r, "recheck-a0", a0 >= 0.0 && a0 >= n / (2.0 * p) - 0.5 && a0 < 1.0);
    put(r, "recheck-b0", b0 >= 0.0 && b0 < 1.0);
    put(r, "recheck-balance", a0 - b0 / 2.0 - (n / 2.0) * (1.0 / p - 1.0 / (2.0 * q)) >= 0.0);
    const double gap = a0 - b0 - (n / 2.0) * (1.0 / p - 1.0 / q);
    put(r, "recheck-gap", gap > -1.0 && gap <= 1.0);

    // Delta selection rule.
    put(r, "recheck-delta-rule", (d1 == 0.0) == (a0 > 0.0) && (d2 == 0.0) == (b0 > 0.0) &&
                                     d1 >= 0.0 && d2 >= 0.0);

    // Velocity advection estimate preconditions.
    put(r, "recheck-va",
        a1 > 0.0 && d1 < 0.5 + (n / 2.0) * (1.0 - 1.0 / p) && a1 + d1 > 0.5 &&
            2.0 * a1 + d1 >= n / (2.0 * p) + 0.5);
    // Temperature advection estimate preconditions.
    put(r, "recheck-ta",
        a2 >= 0.0 && b2 >= 0.0 && a2 > (n / 2.0) * (1.0 / p - 1.0 / q) &&
            d2 < 0.5 + (n / 2.0) * (1.0 - 1.0 / q) && b2 + d2 > 0.5 &&
            a2 + b2 + d2 >= n / (2.0 * p) + 0.5);
    // Viscous heating estimate preconditions.
    put(r, "recheck-vh",
        a2 >= 0.0 && a2 >= 0.5 + (n / 2.0) * (1.0 / p - 1.0 / (2.0 * q)) && a2 <= 1.0);
    // Forcing estimate preconditions.
    put(r, "recheck-fo", b1 >= 0.0 && b1 >= (n / 2.0) * (1.0 / q - 1.0 / p) && b1 <= 1.0);

    // Window placement of the four auxiliary exponents.
    put(r, "recheck-windows", a0 < a1 && a1 < 1.0 - d1 && a0 < a2 && a2 < 1.0 - d1 &&
                                  b0 < b1 && b1 < 1.0 - d2 && b0 < b2 && b2 < 1.0 - d2);

    // Sum rules.
    put(r, "recheck-sum-u", 2.0 * a1 + d1 <= 1.0 + a0);
    put(r, "recheck-sum-th", a2 + b2 + d2 <= 1.0 + a0);
    put(r, "recheck-sum-vh", a2 <= a0 + (1.0 - b0) / 2.0);

    // beta1 window / equality branch.
    if (std::abs(gap - 1.0) <= 1e-9)
        put(r, "recheck-b1-pinned", std::abs(b1 - (1.0 - a0 + b0)) <= 1e-9);
    else
        put(r, "recheck-b1-window", b1 < 1.0 - a0 + b0);

    return r;
}

}  // namespace heatflow
