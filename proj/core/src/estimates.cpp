#include "heatflow/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "heatflow/sampling.hpp"
#include "trig_tables.hpp"

namespace heatflow {

namespace {

using detail::Mat;

std::uint64_t subseed(std::uint64_t seed, std::uint64_t i) {
    return seed ^ (0x9e3779b97f4a7c15ULL * (i + 1));
}

bool within(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

double semigroup_sup(const DiagonalOperator& op, double alpha, double lambda, int samples,
                     std::uint64_t seed, const std::vector<double>& times) {
    double sup = 0.0;
    for (int s = 0; s < samples; ++s) {
        ScalarField f = sample_scalar(op.bandwidth(), subseed(seed, s), 1.0);
        double base = l2_norm(f);
        for (double t : times) {
            ScalarField g = semigroup(op, t, f);
            double val = std::pow(t, alpha) * std::exp(lambda * t) *
                         fractional_norm(op, alpha, g) / base;
            sup = std::max(sup, val);
        }
    }
    return sup;
}

}  // namespace

std::vector<double> log_time_grid(double t_lo, double t_hi, int count) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo) || count < 2)
        raise(Errc::invalid_time, "bad log time grid");
    std::vector<double> t(count);
    for (int i = 0; i < count; ++i)
        t[i] = t_lo * std::pow(t_hi / t_lo, double(i) / (count - 1));
    return t;
}

EstimateReport estimate_semigroup_constant(const DiagonalOperator& op, double alpha,
                                           double lambda, int samples, std::uint64_t seed,
                                           std::vector<double> times) {
    if (alpha < 0.0) raise(Errc::invalid_exponent, "alpha must be >= 0");
    if (!(lambda >= 0.0) || lambda >= op.first_eigenvalue())
        raise(Errc::invalid_rate, "need 0 <= lambda < first eigenvalue");
    if (times.empty()) times = log_time_grid(1e-3, 10.0, 160);
    EstimateReport r;
    r.name = "semigroup-smoothing";
    r.samples = samples;
    r.bandwidth = op.bandwidth();
    r.seed = seed;
    r.constant = semigroup_sup(op, alpha, lambda, samples, seed, times);
    r.reference = semigroup_envelope(alpha, lambda);
    DiagonalOperator fine(op.kind(), 2 * op.bandwidth());
    double refined = semigroup_sup(fine, alpha, lambda, samples, seed, times);
    r.stable = within(r.constant, refined, 0.10);
    return r;
}

double holder_envelope(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) raise(Errc::invalid_exponent, "need 0 < alpha <= 1");
    // sup over x > 0 of (1 - e^-x) x^-alpha: coarse log scan then golden refine.
    auto f = [alpha](double x) { return -std::expm1(-x) * std::pow(x, -alpha); };
    double best_x = 1.0, best = 0.0;
    for (double x = 1e-8; x <= 200.0; x *= 1.05) {
        double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double lo = best_x / 1.2, hi = best_x * 1.2;
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) * 0.382;
        double m2 = lo + (hi - lo) * 0.618;
        if (f(m1) < f(m2))
            lo = m1;
        else
            hi = m2;
    }
    return std::max(best, f(0.5 * (lo + hi)));
}

namespace {

double holder_sup(const DiagonalOperator& op, double alpha, int samples, std::uint64_t seed) {
    auto times = log_time_grid(1e-4, 10.0, 160);
    double sup = 0.0;
    for (int s = 0; s < samples; ++s) {
        ScalarField f = sample_scalar(op.bandwidth(), subseed(seed, s), 1.0);
        double den0 = fractional_norm(op, alpha, f);
        for (double t : times) {
            ScalarField g = semigroup(op, t, f);
            axpy(-1.0, f, g);  // e^{-tA} f - f
            sup = std::max(sup, l2_norm(g) / (std::pow(t, alpha) * den0));
        }
    }
    return sup;
}

}  // namespace

EstimateReport estimate_holder_constant(const DiagonalOperator& op, double alpha, int samples,
                                        std::uint64_t seed) {
    if (!(alpha > 0.0) || alpha > 1.0) raise(Errc::invalid_exponent, "need 0 < alpha <= 1");
    EstimateReport r;
    r.name = "semigroup-holder";
    r.samples = samples;
    r.bandwidth = op.bandwidth();
    r.seed = seed;
    r.constant = holder_sup(op, alpha, samples, seed);
    r.reference = holder_envelope(alpha);
    DiagonalOperator fine(op.kind(), 2 * op.bandwidth());
    r.stable = within(r.constant, holder_sup(fine, alpha, samples, seed), 0.10);
    return r;
}

namespace {

// W^{k,r} norm of a scalar field via boundary-inclusive trapezoid quadrature
// (exact against Parseval for r = 2, since the derivative products expand in
// cosines below the aliasing limit). Supports k <= 2.
double sobolev_norm_scalar(const ScalarField& f, int k, double r, int resolution) {
    const auto& t = detail::trig_tables(f.bandwidth(), resolution);
    std::vector<Mat> derivs;
    derivs.push_back(detail::scalar_grid(t, f, true));
    if (k >= 1) {
        Mat gx, gy;
        detail::scalar_gradients(t, f, true, gx, gy);
        derivs.push_back(gx);
        derivs.push_back(gy);
    }
    if (k >= 2) {
        const int K = f.bandwidth();
        Mat a = detail::coeff_view(f);
        detail::Vec kv = detail::Vec::LinSpaced(K, 1.0, double(K));
        Mat k2 = kv.array().square().matrix().asDiagonal() * a;
        Mat l2m = a * kv.array().square().matrix().asDiagonal();
        Mat kl = kv.asDiagonal() * a * kv.asDiagonal();
        derivs.push_back(-(2.0 / M_PI) * t.sc * k2 * t.sc.transpose());        // f_xx
        derivs.push_back((2.0 / M_PI) * t.cc * kl * t.cc.transpose());         // f_xy
        derivs.push_back(-(2.0 / M_PI) * t.sc * l2m * t.sc.transpose());       // f_yy
    }
    if (std::isinf(r)) {
        double m = 0.0;
        for (const Mat& d : derivs) m = std::max(m, d.cwiseAbs().maxCoeff());
        return m;
    }
    double s = 0.0;
    for (const Mat& d : derivs) {
        Mat w = t.trap.asDiagonal() * d.array().abs().pow(r).matrix() * t.trap.asDiagonal();
        s += w.sum();
    }
    return std::pow(s, 1.0 / r);
}

double fractional_p_norm(const DiagonalOperator& op, double alpha, const ScalarField& f,
                         double p, int resolution) {
    if (p == 2.0) return fractional_norm(op, alpha, f);
    return norm_lp(to_grid(fractional_power(op, alpha, f), resolution), p);
}

double embedding_sup(const DiagonalOperator& op, double alpha, int k, double r, double p,
                     int samples, std::uint64_t seed) {
    const int resolution = 2 * op.bandwidth();
    double sup = 0.0;
    for (int s = 0; s < samples; ++s) {
        ScalarField f = sample_scalar(op.bandwidth(), subseed(seed, s), 1.0);
        double num = sobolev_norm_scalar(f, k, r, resolution);
        double den = fractional_p_norm(op, alpha, f, p, resolution);
        sup = std::max(sup, num / den);
    }
    return sup;
}

}  // namespace

EmbeddingReport embedding_ratio(const DiagonalOperator& op, double alpha, int k, double r,
                                double p, int samples, std::uint64_t seed, bool force) {
    if (k < 0 || k > 2) raise(Errc::invalid_indices, "supported derivative orders: 0, 1, 2");
    if (!(r >= 1.0) || !(p > 1.0)) raise(Errc::invalid_indices, "need r >= 1 and p > 1");
    const double n = 2.0;
    const double lo = 1.0 / p - (2.0 * alpha - k) / n;
    const double hi = 1.0 / p;
    const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
    const bool inside = lo <= inv_r + 1e-12 && inv_r <= hi + 1e-12;
    if (!inside && !force) raise(Errc::invalid_indices, "embedding index condition violated");

    EmbeddingReport rep;
    rep.name = "sobolev-embedding";
    rep.samples = samples;
    rep.bandwidth = op.bandwidth();
    rep.seed = seed;
    rep.outside_range = !inside;
    rep.constant = embedding_sup(op, alpha, k, r, p, samples, seed);
    DiagonalOperator fine(op.kind(), 2 * op.bandwidth());
    rep.stable = within(rep.constant, embedding_sup(fine, alpha, k, r, p, samples, seed), 0.10);
    return rep;
}

DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& norms,
                        double t_lo, double t_hi) {
    if (times.size() != norms.size()) raise(Errc::shape_error, "series length mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi) continue;
        if (!(norms[i] > 0.0)) raise(Errc::cannot_fit, "nonpositive norm in fit window");
        double y = std::log(norms[i]);
        sx += times[i];
        sy += y;
        sxx += times[i] * times[i];
        sxy += times[i] * y;
        ++m;
    }
    if (m < 2) raise(Errc::cannot_fit, "fit window contains fewer than 2 nodes");
    double det = m * sxx - sx * sx;
    if (std::abs(det) < 1e-300) raise(Errc::cannot_fit, "degenerate fit window");
    double slope = (m * sxy - sx * sy) / det;
    double intercept = (sy - slope * sx) / m;
    double rss = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi) continue;
        double e = std::log(norms[i]) - (intercept + slope * times[i]);
        rss += e * e;
    }
    return {-slope, std::sqrt(rss / m)};
}

namespace {

double selector_distance(const Trajectory& traj, const NormSelector& sel, int i, int j) {
    const int K = traj.bandwidth();
    if (sel.grid_max) {
        const int n = sel.resolution > 0 ? sel.resolution : 2 * K;
        double m = 0.0;
        if (sel.component == NormSelector::Component::Velocity) {
            VelocityField d = traj.u[j];
            axpy(-1.0, traj.u[i], d);
            m = norm_lp(to_grid(d, n), std::numeric_limits<double>::infinity());
        } else {
            ScalarField d = traj.theta[j];
            axpy(-1.0, traj.theta[i], d);
            m = norm_lp(to_grid(d, n), std::numeric_limits<double>::infinity());
        }
        return m;
    }
    if (sel.component == NormSelector::Component::Velocity) {
        DiagonalOperator op(OperatorKind::StokesFreeSlip, K);
        VelocityField d = traj.u[j];
        axpy(-1.0, traj.u[i], d);
        return fractional_norm(op, sel.alpha, d);
    }
    DiagonalOperator op(OperatorKind::TemperatureLaplacian, K);
    ScalarField d = traj.theta[j];
    axpy(-1.0, traj.theta[i], d);
    return fractional_norm(op, sel.alpha, d);
}

}  // namespace

double holder_quotient(const Trajectory& traj, double gamma, const NormSelector& sel,
                       double t_lo, double t_hi) {
    if (!(gamma > 0.0) || gamma > 1.0) raise(Errc::invalid_exponent, "need gamma in (0, 1]");
    const int M = traj.grid.steps;
    if (M + 1 < 3) raise(Errc::too_few_nodes, "need at least 3 nodes");
    std::vector<int> idx;
    for (int i = 0; i <= M; ++i) {
        double t = traj.grid.node(i);
        if (t >= t_lo && t <= t_hi && t > 0.0) idx.push_back(i);
    }
    if (idx.size() < 2) raise(Errc::too_few_nodes, "window selects fewer than 2 nodes");
    double sup = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            double h = traj.grid.node(idx[b]) - traj.grid.node(idx[a]);
            sup = std::max(sup,
                           selector_distance(traj, sel, idx[a], idx[b]) / std::pow(h, gamma));
        }
    return sup;
}

DependenceReport continuous_dependence(const Trajectory& a, const Trajectory& b, double alpha0,
                                       double beta0, double alpha, double beta) {
    if (a.grid.steps != b.grid.steps || a.grid.t_end != b.grid.t_end)
        raise(Errc::shape_error, "trajectories live on different grids");
    if (a.bandwidth() != b.bandwidth()) raise(Errc::shape_error, "bandwidth mismatch");
    if (a.law.name != b.law.name) raise(Errc::shape_error, "trajectories use different laws");
    const int K = a.bandwidth();
    DiagonalOperator opu(OperatorKind::StokesFreeSlip, K);
    DiagonalOperator opt(OperatorKind::TemperatureLaplacian, K);

    VelocityField du0 = a.u[0];
    axpy(-1.0, b.u[0], du0);
    ScalarField dt0 = a.theta[0];
    axpy(-1.0, b.theta[0], dt0);
    double d0 = fractional_norm(opu, alpha0, du0) + fractional_norm(opt, beta0, dt0);
    if (d0 == 0.0) raise(Errc::identical_data, "initial data coincide");

    DependenceReport rep;
    rep.d0 = d0;
    for (int i = 0; i <= a.grid.steps; ++i) {
        double t = a.grid.node(i);
        VelocityField du = a.u[i];
        axpy(-1.0, b.u[i], du);
        ScalarField dth = a.theta[i];
        axpy(-1.0, b.theta[i], dth);
        double wu = (alpha == alpha0) ? 1.0 : std::pow(t, alpha - alpha0);
        double wt = (beta == beta0) ? 1.0 : std::pow(t, beta - beta0);
        double d = wu * fractional_norm(opu, alpha, du) + wt * fractional_norm(opt, beta, dth);
        rep.t.push_back(t);
        rep.ratio.push_back(d / d0);
        rep.sup = std::max(rep.sup, d / d0);
    }
    return rep;
}

BoundSeries global_bound_functions(const Trajectory& traj, double lambda, double lambda2,
                                   double alpha0, double beta0, double alpha, double beta) {
    const double top = 2.0;  // first eigenvalue
    if (!(lambda > 0.0) || lambda >= top || !(lambda2 > lambda) ||
        lambda2 >= std::min(2.0 * lambda, top))
        raise(Errc::invalid_rates, "need 0 < lambda < lambda2 < min(2 lambda, 2)");
    const int K = traj.bandwidth();
    DiagonalOperator opu(OperatorKind::StokesFreeSlip, K);
    DiagonalOperator opt(OperatorKind::TemperatureLaplacian, K);
    BoundSeries s;
    double e1 = 0.0, e2 = 0.0;
    for (int i = 1; i <= traj.grid.steps; ++i) {
        double t = traj.grid.node(i);
        e1 = std::max(e1, std::pow(t, alpha - alpha0) * std::exp(lambda * t) *
                              fractional_norm(opu, alpha, traj.u[i]));
        e2 = std::max(e2, std::pow(t, beta - beta0) * std::exp(lambda2 * t) *
                              fractional_norm(opt, beta, traj.theta[i]));
        s.t.push_back(t);
        s.e1.push_back(e1);
        s.e2.push_back(e2);
    }
    return s;
}

namespace {

double bilinear_sup(BilinearKind which, const ExponentPlan& plan, int bandwidth, int samples,
                    std::uint64_t seed, const ForcingLaw& law) {
    DiagonalOperator opu(OperatorKind::StokesFreeSlip, bandwidth);
    DiagonalOperator opt(OperatorKind::TemperatureLaplacian, bandwidth);
    // Damping relative to the normalizing exponent keeps the normalized
    // ensemble's spectral profile convergent, so the sup is refinement-stable
    // even for exponents above the lambda^-1 regularity edge.
    auto damping = [](double alpha_norm) { return alpha_norm + 0.75; };
    double sup = 0.0;
    for (int s = 0; s < samples; ++s) {
        switch (which) {
            case BilinearKind::VelocityAdvection: {
                double d = damping(plan.alpha1);
                auto u = normalize_to(opu, plan.alpha1, 1.0,
                                      sample_velocity(bandwidth, subseed(seed, 2 * s), d));
                auto v = normalize_to(opu, plan.alpha1, 1.0,
                                      sample_velocity(bandwidth, subseed(seed, 2 * s + 1), d));
                sup = std::max(sup, fractional_norm(opu, -plan.delta1, advect_velocity(u, v)));
                break;
            }
            case BilinearKind::TemperatureAdvection: {
                auto u = normalize_to(opu, plan.alpha2, 1.0,
                                      sample_velocity(bandwidth, subseed(seed, 2 * s),
                                                      damping(plan.alpha2)));
                auto th = normalize_to(opt, plan.beta2, 1.0,
                                       sample_scalar(bandwidth, subseed(seed, 2 * s + 1),
                                                     damping(plan.beta2)));
                sup = std::max(sup, fractional_norm(opt, -plan.delta2, advect_scalar(u, th)));
                break;
            }
            case BilinearKind::ViscousHeating: {
                double d = damping(plan.alpha2);
                auto u = normalize_to(opu, plan.alpha2, 1.0,
                                      sample_velocity(bandwidth, subseed(seed, 2 * s), d));
                auto v = normalize_to(opu, plan.alpha2, 1.0,
                                      sample_velocity(bandwidth, subseed(seed, 2 * s + 1), d));
                sup = std::max(sup, l2_norm(dissipation(u, v)));
                break;
            }
            case BilinearKind::Forcing: {
                if (law.lipschitz <= 0.0) return 0.0;
                auto th = normalize_to(opt, plan.beta1, 1.0,
                                       sample_scalar(bandwidth, subseed(seed, s),
                                                     damping(plan.beta1)));
                sup = std::max(sup, l2_norm(buoyancy(th, law)) / law.lipschitz);
                break;
            }
        }
    }
    return sup;
}

const char* bilinear_name(BilinearKind which) {
    switch (which) {
        case BilinearKind::VelocityAdvection: return "velocity-advection";
        case BilinearKind::TemperatureAdvection: return "temperature-advection";
        case BilinearKind::ViscousHeating: return "viscous-heating";
        case BilinearKind::Forcing: return "forcing";
    }
    return "";
}

}  // namespace

EstimateReport estimate_bilinear_constant(BilinearKind which, const ExponentPlan& plan,
                                          int bandwidth, int samples, std::uint64_t seed,
                                          const ForcingLaw& law) {
    EstimateReport r;
    r.name = bilinear_name(which);
    r.samples = samples;
    r.bandwidth = bandwidth;
    r.seed = seed;
    r.constant = bilinear_sup(which, plan, bandwidth, samples, seed, law);
    double refined = bilinear_sup(which, plan, 2 * bandwidth, samples, seed, law);
    r.stable = within(r.constant, refined, 0.10);
    return r;
}

}  // namespace heatflow
