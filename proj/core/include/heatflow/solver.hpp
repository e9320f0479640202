#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatflow/rhs.hpp"

namespace heatflow {

/// Uniform partition 0 = t_0 < ... < t_M = t_end, dt = t_end / M, M >= 2.
struct TimeGrid {
    double t_end = 1.0;
    int steps = 2;

    static TimeGrid from_step(double t_end, double dt);

    double dt() const { return t_end / steps; }
    int nodes() const { return steps + 1; }
    double node(int i) const { return t_end * double(i) / steps; }
    void validate() const;
};

enum class SolveMode { Picard, Etd };
const char* to_string(SolveMode m);

/// Time-gridded pair (u, theta) with solver metadata. Node 0 holds the
/// initial data exactly.
struct Trajectory {
    TimeGrid grid;
    std::vector<VelocityField> u;
    std::vector<ScalarField> theta;
    ForcingLaw law;
    SolveMode mode = SolveMode::Etd;
    std::optional<int> iterations_used;
    double picard_tol = 1e-10;  // kept so restarts replay the same scheme
    int picard_max_iter = 25;

    int bandwidth() const { return u.empty() ? 0 : u.front().bandwidth(); }
    /// |u(t_i)|_2 + |theta(t_i)|_2.
    double total_norm(int i) const;
};

enum class PicardStatus { Converged, Diverged };

struct PicardResult {
    Trajectory trajectory;
    std::vector<double> distances;  // sup-node coefficient-L2 distance per sweep
    PicardStatus status = PicardStatus::Converged;
};

/// phi-functions of exponential integrators: phi0 = e^z,
/// phi1 = (e^z - 1)/z, phi2 = (e^z - z - 1)/z^2, with a series branch for
/// |z| < 1e-4 (continuous across the switch to 1e-12). Defined for z <= 0.
double phi_function(int order, double z);

/// Whole-trajectory successive approximation for the integral form
///   u(t) = e^{-tA}u0 + int_0^t e^{-(t-s)A} F(s) ds   (and likewise theta),
/// where per sweep the nonlinearity is interpolated linearly on each panel
/// and convolved with the eigenmode exponentials exactly via phi1/phi2.
/// Stops when the sup over nodes of |du|_2 + |dtheta|_2 falls below tol;
/// reaching max_iter yields Diverged with the partial history. NaN or norm
/// growth beyond 1e8 x initial raises numerical_blowup.
PicardResult picard_solve(const VelocityField& u0, const ScalarField& theta0,
                          const ForcingLaw& law, const TimeGrid& grid, int max_iter,
                          double tol);

/// Stepwise second-order exponential integrator (exponential trapezoid with
/// an exponential-Euler predictor). Exact for autonomous linear flow.
Trajectory etd_march(const VelocityField& u0, const ScalarField& theta0, const ForcingLaw& law,
                     const TimeGrid& grid);

struct ResidualSeries {
    std::vector<double> t;        // interior node times
    std::vector<double> r_u;      // |d_t u + A u - F|_2 / max(1, |A u|_2)
    std::vector<double> r_theta;  // likewise for theta
    double max() const;
};

/// Central-difference residual of the differential form at interior nodes.
ResidualSeries residual_strong(const Trajectory& traj);

/// Re-solves on [t_j, T] from the trajectory values at node j with the same
/// scheme and returns the sup-node discrepancy |du|_2 + |dtheta|_2 against
/// the original tail.
double restart_consistency(const Trajectory& traj, int j);

}  // namespace heatflow
