#pragma once

#include <optional>
#include <vector>

#include "heatflow/errors.hpp"

namespace heatflow {

struct SingularTerm {
    double coef = 0.0;      // a_i > 0 resp. b_j > 0
    double exponent = 0.0;  // alpha_i resp. beta_j, in [0,1)
};

/// Data of the weakly singular integral inequality
///   y(t) <= sum_i a_i t^{-alpha_i} + sum_j b_j int_0^t (t-s)^{-beta_j} y(s) ds
/// on (0, horizon].
struct GronwallSpec {
    std::vector<SingularTerm> a;
    std::vector<SingularTerm> b;
    double horizon = 1.0;

    void validate() const;
};

/// Closed-form majorant for the inequality above with explicit constant C:
///   C sum_i a_i t^{-alpha_i} (1 + B_{n+1}(t) e^{C B_{n+1}(t)}) sum_{k=0}^n B_k(t),
/// where B_k(t) = (sum_j b_j t^{1-beta_j})^k, beta = max_j beta_j and
/// n = floor(beta/(1-beta)) + 1. Returns +infinity on overflow (the bound
/// still dominates).
double gronwall_bound(const GronwallSpec& spec, double big_c, double t);

/// Solves the inequality taken with equality by product integration on M
/// uniform nodes t_i = i*horizon/M: the unknown is the regular part
/// w = y - forcing (the forcing convolutions reduce to beta functions), w is
/// piecewise linear, and the kernel moments int (t-s)^{-beta} {1, s} ds are
/// integrated exactly per panel. Requires alpha_i + beta_j <= 1; an
/// unsolvable node equation raises oracle_failure. Returns y at t_1..t_M.
std::vector<double> volterra_oracle(const GronwallSpec& spec, int nodes);

/// Node times matching volterra_oracle (t_1..t_M).
std::vector<double> volterra_nodes(const GronwallSpec& spec, int nodes);

/// Smallest C on the dyadic grid {2^k, 0 <= k <= 60} whose bound dominates
/// the oracle at every node, or nullopt.
std::optional<double> find_dominating_constant(const GronwallSpec& spec, int nodes);

}  // namespace heatflow
