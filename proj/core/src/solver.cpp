#include "heatflow/solver.hpp"

#include <algorithm>
#include <cmath>

namespace heatflow {

TimeGrid TimeGrid::from_step(double t_end, double dt) {
    if (!(t_end > 0.0) || !(dt > 0.0)) raise(Errc::invalid_time, "t_end and dt must be positive");
    int steps = int(std::llround(t_end / dt));
    if (steps < 1 || std::abs(steps * dt - t_end) > 1e-9 * t_end)
        raise(Errc::invariant_violation, "dt must divide t_end");
    return TimeGrid{t_end, steps};
}

void TimeGrid::validate() const {
    if (!(t_end > 0.0)) raise(Errc::invalid_time, "t_end must be positive");
    if (steps < 1) raise(Errc::invalid_time, "need at least one step");
}

const char* to_string(SolveMode m) { return m == SolveMode::Picard ? "picard" : "etd"; }

double Trajectory::total_norm(int i) const { return l2_norm(u.at(i)) + l2_norm(theta.at(i)); }

double phi_function(int order, double z) {
    if (order < 0 || order > 2) raise(Errc::invalid_exponent, "phi order must be 0, 1 or 2");
    if (z > 0.0) raise(Errc::domain_error, "phi functions are used with z <= 0");
    if (order == 0) return std::exp(z);
    // The direct quotients cancel catastrophically as z -> 0 (for phi2 the
    // numerator is ~z^2/2), so a 13-term series covers |z| < 0.1; both
    // branches agree to ~1e-13 at the switch.
    if (std::abs(z) < 0.1) {
        const int shift = order;  // phi_k(z) = sum_n z^n / (n+k)!
        double fact = 1.0;
        for (int n = 1; n <= shift; ++n) fact *= n;
        double term = 1.0 / fact, sum = 0.0;
        for (int n = 0; n <= 12; ++n) {
            sum += term;
            term *= z / (n + 1 + shift);
        }
        return sum;
    }
    const double ez = std::exp(z);
    if (order == 1) return (ez - 1.0) / z;
    return (ez - z - 1.0) / (z * z);
}

namespace {

struct ModeTables {
    std::vector<double> lam, decay, p1, p2, p12;  // p12 = p1 - p2
};

ModeTables mode_tables(int bandwidth, double dt) {
    ModeTables t;
    const std::size_t n = static_cast<std::size_t>(bandwidth) * bandwidth;
    t.lam.resize(n);
    t.decay.resize(n);
    t.p1.resize(n);
    t.p2.resize(n);
    t.p12.resize(n);
    for (int k = 1; k <= bandwidth; ++k)
        for (int l = 1; l <= bandwidth; ++l) {
            std::size_t i = static_cast<std::size_t>((k - 1) * bandwidth + (l - 1));
            double mu = double(k) * k + double(l) * l;
            double z = -dt * mu;
            t.lam[i] = mu;
            t.decay[i] = std::exp(z);
            t.p1[i] = phi_function(1, z);
            t.p2[i] = phi_function(2, z);
            t.p12[i] = t.p1[i] - t.p2[i];
        }
    return t;
}

void check_state(const VelocityField& u, const ScalarField& th, double limit) {
    if (!u.finite() || !th.finite()) raise(Errc::numerical_blowup, "non-finite field values");
    if (l2_norm(u) + l2_norm(th) > limit)
        raise(Errc::numerical_blowup, "norm exceeded 1e8 x initial data");
}

double blowup_limit(double initial_total) {
    return 1e8 * (initial_total > 0.0 ? initial_total : 1.0);
}

}  // namespace

Trajectory etd_march(const VelocityField& u0, const ScalarField& theta0, const ForcingLaw& law,
                     const TimeGrid& grid) {
    grid.validate();
    if (u0.bandwidth() != theta0.bandwidth()) raise(Errc::shape_error, "bandwidth mismatch");
    const int K = u0.bandwidth();
    const int M = grid.steps;
    const double dt = grid.dt();
    const ModeTables mt = mode_tables(K, dt);
    const double limit = blowup_limit(l2_norm(u0) + l2_norm(theta0));

    Trajectory traj;
    traj.grid = grid;
    traj.law = law;
    traj.mode = SolveMode::Etd;
    traj.u.reserve(M + 1);
    traj.theta.reserve(M + 1);
    traj.u.push_back(u0);
    traj.theta.push_back(theta0);

    VelocityField u = u0, up(K);
    ScalarField th = theta0, thp(K);
    for (int step = 0; step < M; ++step) {
        RhsValue r = rhs_full(u, th, law);
        auto cu = u.coeffs();
        auto ct = th.coeffs();
        auto cf = r.f.coeffs();
        auto cg = r.g.coeffs();
        auto cup = up.coeffs();
        auto ctp = thp.coeffs();
        for (std::size_t i = 0; i < cu.size(); ++i) {
            cup[i] = mt.decay[i] * cu[i] + dt * mt.p1[i] * cf[i];
            ctp[i] = mt.decay[i] * ct[i] + dt * mt.p1[i] * cg[i];
        }
        RhsValue rp = rhs_full(up, thp, law);
        auto cfp = rp.f.coeffs();
        auto cgp = rp.g.coeffs();
        for (std::size_t i = 0; i < cu.size(); ++i) {
            cu[i] = mt.decay[i] * cu[i] + dt * (mt.p12[i] * cf[i] + mt.p2[i] * cfp[i]);
            ct[i] = mt.decay[i] * ct[i] + dt * (mt.p12[i] * cg[i] + mt.p2[i] * cgp[i]);
        }
        check_state(u, th, limit);
        traj.u.push_back(u);
        traj.theta.push_back(th);
    }
    return traj;
}

PicardResult picard_solve(const VelocityField& u0, const ScalarField& theta0,
                          const ForcingLaw& law, const TimeGrid& grid, int max_iter, double tol) {
    grid.validate();
    if (u0.bandwidth() != theta0.bandwidth()) raise(Errc::shape_error, "bandwidth mismatch");
    if (!(tol > 0.0)) raise(Errc::invalid_exponent, "tol must be positive");
    if (max_iter < 1) raise(Errc::invalid_exponent, "max_iter must be >= 1");
    const int K = u0.bandwidth();
    const int M = grid.steps;
    const double dt = grid.dt();
    const ModeTables mt = mode_tables(K, dt);
    const double limit = blowup_limit(l2_norm(u0) + l2_norm(theta0));

    // Free evolution e^{-t_i A} u0: the sweep-independent first term.
    std::vector<VelocityField> free_u(M + 1, VelocityField(K));
    std::vector<ScalarField> free_th(M + 1, ScalarField(K));
    free_u[0] = u0;
    free_th[0] = theta0;
    for (int i = 1; i <= M; ++i) {
        auto pu = free_u[i - 1].coeffs();
        auto pt = free_th[i - 1].coeffs();
        auto cu = free_u[i].coeffs();
        auto ct = free_th[i].coeffs();
        for (std::size_t m = 0; m < cu.size(); ++m) {
            cu[m] = mt.decay[m] * pu[m];
            ct[m] = mt.decay[m] * pt[m];
        }
    }

    PicardResult res;
    res.trajectory.grid = grid;
    res.trajectory.law = law;
    res.trajectory.mode = SolveMode::Picard;
    res.trajectory.picard_tol = tol;
    res.trajectory.picard_max_iter = max_iter;
    res.trajectory.u = free_u;
    res.trajectory.theta = free_th;

    std::vector<VelocityField> next_u(M + 1, VelocityField(K));
    std::vector<ScalarField> next_th(M + 1, ScalarField(K));
    std::vector<RhsValue> rhs_nodes;
    rhs_nodes.reserve(M + 1);

    for (int sweep = 1; sweep <= max_iter; ++sweep) {
        rhs_nodes.clear();
        for (int i = 0; i <= M; ++i)
            rhs_nodes.push_back(rhs_full(res.trajectory.u[i], res.trajectory.theta[i], law));

        // Duhamel integral with per-panel linear reconstruction, advanced by
        // the exact semigroup recursion I_i = e^{-dt A} I_{i-1} + panel_i.
        VelocityField iu(K);
        ScalarField it(K);
        next_u[0] = u0;
        next_th[0] = theta0;
        for (int i = 1; i <= M; ++i) {
            auto ciu = iu.coeffs();
            auto cit = it.coeffs();
            auto f0 = rhs_nodes[i - 1].f.coeffs();
            auto f1 = rhs_nodes[i].f.coeffs();
            auto g0 = rhs_nodes[i - 1].g.coeffs();
            auto g1 = rhs_nodes[i].g.coeffs();
            auto cu = next_u[i].coeffs();
            auto ct = next_th[i].coeffs();
            auto bu = free_u[i].coeffs();
            auto bt = free_th[i].coeffs();
            for (std::size_t m = 0; m < ciu.size(); ++m) {
                ciu[m] = mt.decay[m] * ciu[m] + dt * (mt.p12[m] * f0[m] + mt.p2[m] * f1[m]);
                cit[m] = mt.decay[m] * cit[m] + dt * (mt.p12[m] * g0[m] + mt.p2[m] * g1[m]);
                cu[m] = bu[m] + ciu[m];
                ct[m] = bt[m] + cit[m];
            }
            check_state(next_u[i], next_th[i], limit);
        }

        double dist = 0.0;
        for (int i = 0; i <= M; ++i)
            dist = std::max(dist, coeff_distance(next_u[i], res.trajectory.u[i]) +
                                      coeff_distance(next_th[i], res.trajectory.theta[i]));
        res.distances.push_back(dist);
        res.trajectory.u.swap(next_u);
        res.trajectory.theta.swap(next_th);
        res.trajectory.iterations_used = sweep;
        if (dist <= tol) {
            res.status = PicardStatus::Converged;
            return res;
        }
    }
    res.status = PicardStatus::Diverged;
    return res;
}

double ResidualSeries::max() const {
    double m = 0.0;
    for (double v : r_u) m = std::max(m, v);
    for (double v : r_theta) m = std::max(m, v);
    return m;
}

ResidualSeries residual_strong(const Trajectory& traj) {
    const int M = traj.grid.steps;
    if (M + 1 < 3) raise(Errc::too_few_nodes, "residual needs at least 3 nodes");
    const int K = traj.bandwidth();
    const double dt = traj.grid.dt();
    const DiagonalOperator op(OperatorKind::StokesFreeSlip, K);
    ResidualSeries out;
    for (int i = 1; i < M; ++i) {
        RhsValue r = rhs_full(traj.u[i], traj.theta[i], traj.law);
        double su = 0.0, st = 0.0, nau = 0.0, nat = 0.0;
        auto up = traj.u[i - 1].coeffs();
        auto un = traj.u[i + 1].coeffs();
        auto uc = traj.u[i].coeffs();
        auto tp = traj.theta[i - 1].coeffs();
        auto tn = traj.theta[i + 1].coeffs();
        auto tc = traj.theta[i].coeffs();
        auto cf = r.f.coeffs();
        auto cg = r.g.coeffs();
        const auto& lam = op.eigenvalues();
        for (std::size_t m = 0; m < uc.size(); ++m) {
            double du = (un[m] - up[m]) / (2 * dt) + lam[m] * uc[m] - cf[m];
            double dth = (tn[m] - tp[m]) / (2 * dt) + lam[m] * tc[m] - cg[m];
            su += du * du;
            st += dth * dth;
            nau += lam[m] * uc[m] * lam[m] * uc[m];
            nat += lam[m] * tc[m] * lam[m] * tc[m];
        }
        out.t.push_back(traj.grid.node(i));
        out.r_u.push_back(std::sqrt(su) / std::max(1.0, std::sqrt(nau)));
        out.r_theta.push_back(std::sqrt(st) / std::max(1.0, std::sqrt(nat)));
    }
    return out;
}

double restart_consistency(const Trajectory& traj, int j) {
    const int M = traj.grid.steps;
    if (j < 0 || j >= M) raise(Errc::invalid_indices, "restart node must satisfy 0 <= j < M");
    TimeGrid tail{traj.grid.t_end - traj.grid.node(j), M - j};
    Trajectory re;
    if (traj.mode == SolveMode::Etd) {
        re = etd_march(traj.u[j], traj.theta[j], traj.law, tail);
    } else {
        re = picard_solve(traj.u[j], traj.theta[j], traj.law, tail, traj.picard_max_iter,
                          traj.picard_tol)
                 .trajectory;
    }
    double sup = 0.0;
    for (int i = 0; i <= tail.steps; ++i)
        sup = std::max(sup, coeff_distance(re.u[i], traj.u[j + i]) +
                                coeff_distance(re.theta[i], traj.theta[j + i]));
    return sup;
}

}  // namespace heatflow
