#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "heatflow/exponents.hpp"
#include "heatflow/solver.hpp"

namespace heatflow {

/// Result of an empirical constant estimation: the observed supremum, the
/// sampling configuration, and whether the value moved by no more than 10%
/// when the bandwidth was doubled. `reference` carries the analytic envelope
/// when one exists (NaN otherwise).
struct EstimateReport {
    std::string name;
    double constant = 0.0;
    int samples = 0;
    int bandwidth = 0;
    bool stable = false;
    std::uint64_t seed = 0;
    double reference = std::numeric_limits<double>::quiet_NaN();
};

/// Log-spaced time grid, endpoints included.
std::vector<double> log_time_grid(double t_lo, double t_hi, int count);

/// sup over samples and a time grid (default log grid on [1e-3, 10]) of
/// t^alpha e^{lambda t} |A^alpha e^{-tA} f|_2 / |f|_2; never exceeds the
/// closed-form envelope. Requires 0 <= lambda < 2 (invalid_rate) and
/// alpha >= 0.
EstimateReport estimate_semigroup_constant(const DiagonalOperator& op, double alpha,
                                           double lambda, int samples, std::uint64_t seed,
                                           std::vector<double> times = {});

/// One-dimensional maximum of (1 - e^{-x}) / x^alpha over x > 0 (the scalar
/// envelope of the semigroup Hoelder bound).
double holder_envelope(double alpha);

/// sup over samples and a log time grid of
/// |(e^{-tA} - I) f|_2 / (t^alpha |A^alpha f|_2), 0 < alpha <= 1.
EstimateReport estimate_holder_constant(const DiagonalOperator& op, double alpha, int samples,
                                        std::uint64_t seed);

/// Empirical ratio of the grid W^{k,r} norm over |A^alpha . |_p on random
/// fields. The index condition 1/p - (2 alpha - k)/n <= 1/r <= 1/p is
/// enforced unless force = true, in which case the report is flagged
/// outside_range. Sobolev norms use boundary-inclusive trapezoid quadrature.
struct EmbeddingReport : EstimateReport {
    bool outside_range = false;
};
EmbeddingReport embedding_ratio(const DiagonalOperator& op, double alpha, int k, double r,
                                double p, int samples, std::uint64_t seed, bool force = false);

/// Empirical constants of the bilinear/forcing estimates at the plan's
/// exponents. `which` selects the ratio:
///   velocity-advection    |A^{-d1} P(u.grad)v|_2 / (|u|_{X^a1} |v|_{X^a1})
///   temperature-advection |B^{-d2} (u.grad)th|_2 / (|u|_{X^a2} |th|_{Y^b2})
///   viscous-heating       |Phi(u,v)|_2 / (|u|_{X^a2} |v|_{X^a2})
///   forcing               |P f(th)|_2 / (L_f |th|_{Y^b1})
enum class BilinearKind { VelocityAdvection, TemperatureAdvection, ViscousHeating, Forcing };
EstimateReport estimate_bilinear_constant(BilinearKind which, const ExponentPlan& plan,
                                          int bandwidth, int samples, std::uint64_t seed,
                                          const ForcingLaw& law);

struct DecayFit {
    double rate = 0.0;      // decay rate (positive for decaying norms)
    double residual = 0.0;  // rms residual of the log-linear fit
};

/// Least-squares slope of log(norm) against t over window [t_lo, t_hi].
/// Nonpositive norms in the window raise cannot_fit.
DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& norms,
                        double t_lo, double t_hi);

/// Norm selector for trajectory-based checks: fractional norm of one
/// component, or the grid max norm of the pair.
struct NormSelector {
    enum class Component { Velocity, Temperature } component = Component::Temperature;
    double alpha = 0.0;     // fractional exponent (ignored when grid_max)
    bool grid_max = false;  // max-norm over collocation nodes instead
    int resolution = 0;     // grid resolution for grid_max (0: 2x bandwidth)
};

/// sup over node pairs t_lo <= t_i < t_j <= t_hi of
/// |x(t_j) - x(t_i)| / (t_j - t_i)^gamma in the selected norm.
double holder_quotient(const Trajectory& traj, double gamma, const NormSelector& sel,
                       double t_lo, double t_hi);

struct DependenceReport {
    std::vector<double> t;
    std::vector<double> ratio;  // D(t)/D0 in the weighted pair norm
    double sup = 0.0;
    double d0 = 0.0;
};

/// Weighted-norm distance ratio of two runs on the same grid and law:
/// D(t) = t^{alpha-alpha0} |du|_{X^alpha} + t^{beta-beta0} |dth|_{Y^beta},
/// D0 the same at t = 0 with (alpha, beta) = (alpha0, beta0). Identical
/// initial data raise identical_data.
DependenceReport continuous_dependence(const Trajectory& a, const Trajectory& b, double alpha0,
                                       double beta0, double alpha, double beta);

struct BoundSeries {
    std::vector<double> t;
    std::vector<double> e1;  // running sup of s^{alpha-alpha0} e^{lambda s} |u|_{X^alpha}
    std::vector<double> e2;  // running sup of s^{beta-beta0} e^{lambda2 s} |th|_{Y^beta}
};

/// Running suprema over trajectory nodes; requires
/// 0 < lambda < 2 and lambda < lambda2 < min(2 lambda, 2) (invalid_rates).
BoundSeries global_bound_functions(const Trajectory& traj, double lambda, double lambda2,
                                   double alpha0, double beta0, double alpha, double beta);

}  // namespace heatflow
