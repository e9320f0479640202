#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heatflow/sampling.hpp"
#include "heatflow/solver.hpp"

using namespace heatflow;

namespace {

double traj_distance(const Trajectory& a, const Trajectory& b, int stride_b = 1) {
    double sup = 0.0;
    for (int i = 0; i <= a.grid.steps; ++i)
        sup = std::max(sup, coeff_distance(a.u[i], b.u[i * stride_b]) +
                                coeff_distance(a.theta[i], b.theta[i * stride_b]));
    return sup;
}

Trajectory small_nonlinear(int steps, double t_end = 0.5, int bandwidth = 8) {
    DiagonalOperator opu(OperatorKind::StokesFreeSlip, bandwidth);
    DiagonalOperator opt(OperatorKind::TemperatureLaplacian, bandwidth);
    VelocityField u0(bandwidth);
    u0.at(1, 1) = 1.0;
    u0.at(2, 1) = 0.3;
    u0.at(1, 2) = 0.3;
    ScalarField th0(bandwidth);
    th0.at(1, 1) = 0.5;
    th0.at(2, 2) = 0.4;
    u0 = normalize_to(opu, 0.5, 5e-2, std::move(u0));
    th0 = normalize_to(opt, 0.5, 5e-2, std::move(th0));
    return etd_march(u0, th0, make_forcing_law("linear-buoyancy", 1.0),
                     TimeGrid{t_end, steps});
}

}  // namespace

TEST_CASE("phi functions: values, limits, series continuity") {
    CHECK(phi_function(0, 0.0) == 1.0);
    CHECK(phi_function(1, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(phi_function(2, 0.0) == doctest::Approx(0.5).epsilon(1e-15));

    // high-precision references
    CHECK(phi_function(1, -1.0) == doctest::Approx(0.632120558828557678).epsilon(1e-14));
    CHECK(phi_function(2, -1.0) == doctest::Approx(0.367879441171442322).epsilon(1e-14));
    CHECK(phi_function(1, -1e-6) == doctest::Approx(0.999999500000166667).epsilon(1e-12));
    CHECK(phi_function(2, -1e-6) == doctest::Approx(0.499999833333375000).epsilon(1e-12));

    // continuity across the series switch at |z| = 0.1 (the direct branch is
    // accurate to ~1e-13 there, the series to round-off)
    for (double z : {-0.099, -0.101}) {
        double direct = (std::exp(z) - 1.0) / z;
        CHECK(phi_function(1, z) == doctest::Approx(direct).epsilon(1e-12));
        double direct2 = (std::exp(z) - z - 1.0) / (z * z);
        CHECK(phi_function(2, z) == doctest::Approx(direct2).epsilon(1e-12));
    }
    CHECK_THROWS_AS(phi_function(3, -1.0), Error);
    CHECK_THROWS_AS(phi_function(1, 0.5), Error);
}

TEST_CASE("linear heat decay is exact for both schemes") {
    const int K = 4;
    ScalarField th0(K);
    th0.at(1, 1) = 0.7;
    VelocityField u0(K);
    ForcingLaw law = make_forcing_law("zero");
    TimeGrid grid{1.0, 64};

    Trajectory e = etd_march(u0, th0, law, grid);
    PicardResult p = picard_solve(u0, th0, law, grid, 10, 1e-12);
    CHECK(p.status == PicardStatus::Converged);
    CHECK(*p.trajectory.iterations_used <= 2);

    for (int i = 0; i <= 64; ++i) {
        double expect = 0.7 * std::exp(-2.0 * grid.node(i));
        CHECK(std::abs(e.theta[i].at(1, 1) - expect) <= 1e-10 * expect);
        CHECK(std::abs(p.trajectory.theta[i].at(1, 1) - expect) <= 1e-10 * expect);
        CHECK(l2_norm(e.u[i]) == 0.0);
    }
}

TEST_CASE("zero data stays zero in one sweep") {
    const int K = 4;
    PicardResult p = picard_solve(VelocityField(K), ScalarField(K),
                                  make_forcing_law("linear-buoyancy", 1.0), TimeGrid{1.0, 8},
                                  5, 1e-12);
    CHECK(p.status == PicardStatus::Converged);
    CHECK(p.distances.size() == 1);
    CHECK(p.distances[0] == 0.0);
    for (int i = 0; i <= 8; ++i) CHECK(p.trajectory.total_norm(i) == 0.0);
}

TEST_CASE("picard contraction for small data") {
    const int K = 8;
    DiagonalOperator opu(OperatorKind::StokesFreeSlip, K);
    DiagonalOperator opt(OperatorKind::TemperatureLaplacian, K);
    VelocityField u0 = normalize_to(opu, 0.0, 1e-2, sample_velocity(K, 1001, 1.0));
    ScalarField th0 = normalize_to(opt, 0.0, 1e-2, sample_scalar(K, 1002, 1.0));
    PicardResult p = picard_solve(u0, th0, make_forcing_law("linear-buoyancy", 1.0),
                                  TimeGrid{0.5, 32}, 20, 1e-10);
    CHECK(p.status == PicardStatus::Converged);
    CHECK(*p.trajectory.iterations_used <= 20);
    REQUIRE(p.distances.size() >= 3);
    for (std::size_t m = 1; m + 1 < p.distances.size(); ++m)
        if (p.distances[m] > 1e-14)
            CHECK(p.distances[m + 1] / p.distances[m] <= 0.5);
    // distances eventually monotone decreasing
    for (std::size_t m = 1; m + 1 < p.distances.size(); ++m)
        CHECK(p.distances[m + 1] <= p.distances[m]);
}

TEST_CASE("picard reports divergence with partial history") {
    const int K = 6;
    DiagonalOperator opu(OperatorKind::StokesFreeSlip, K);
    VelocityField u0 = normalize_to(opu, 0.0, 5.0, sample_velocity(K, 7, 1.0));
    ScalarField th0(K);
    // large data, one sweep allowed: cannot reach 1e-14
    PicardResult p = picard_solve(u0, th0, make_forcing_law("zero"), TimeGrid{1.0, 8}, 1, 1e-14);
    CHECK(p.status == PicardStatus::Diverged);
    CHECK(p.distances.size() == 1);
    CHECK(p.trajectory.u.size() == 9);
}

TEST_CASE("etd self-convergence is second order") {
    Trajectory ref = small_nonlinear(1024);
    double e32 = traj_distance(small_nonlinear(32), ref, 32);
    double e64 = traj_distance(small_nonlinear(64), ref, 16);
    double e128 = traj_distance(small_nonlinear(128), ref, 8);
    double o1 = std::log2(e32 / e64);
    double o2 = std::log2(e64 / e128);
    CHECK(o1 >= 1.6);
    CHECK(o1 <= 2.4);
    CHECK(o2 >= 1.6);
    CHECK(o2 <= 2.4);
}

TEST_CASE("picard and etd agree within their self-error") {
    Trajectory e64 = small_nonlinear(64);
    Trajectory e128 = small_nonlinear(128);
    double self_err = traj_distance(e64, e128, 2);

    DiagonalOperator opu(OperatorKind::StokesFreeSlip, 8);
    DiagonalOperator opt(OperatorKind::TemperatureLaplacian, 8);
    PicardResult p = picard_solve(e64.u[0], e64.theta[0], e64.law, e64.grid, 25, 1e-12);
    CHECK(p.status == PicardStatus::Converged);
    double gap = traj_distance(e64, p.trajectory);
    CHECK(gap <= 10.0 * std::max(self_err, 1e-12));
}

TEST_CASE("strong-form residual scales like dt^2") {
    double r32 = residual_strong(small_nonlinear(32)).max();
    double r64 = residual_strong(small_nonlinear(64)).max();
    double r128 = residual_strong(small_nonlinear(128)).max();
    CHECK(r32 / r64 >= 2.8);
    CHECK(r32 / r64 <= 5.2);
    CHECK(r64 / r128 >= 2.8);
    CHECK(r64 / r128 <= 5.2);

    // pure linear trajectory: residual is the central-difference Taylor error
    ScalarField th0(4);
    th0.at(1, 1) = 1.0;
    Trajectory lin32 = etd_march(VelocityField(4), th0, make_forcing_law("zero"),
                                 TimeGrid{1.0, 32});
    Trajectory lin64 = etd_march(VelocityField(4), th0, make_forcing_law("zero"),
                                 TimeGrid{1.0, 64});
    double l32 = residual_strong(lin32).max();
    double l64 = residual_strong(lin64).max();
    CHECK(l32 / l64 == doctest::Approx(4.0).epsilon(0.15));

    Trajectory zero = etd_march(VelocityField(4), ScalarField(4), make_forcing_law("zero"),
                                TimeGrid{1.0, 8});
    CHECK(residual_strong(zero).max() == 0.0);
}

TEST_CASE("restart consistency") {
    // linear: the flow is the exact semigroup, so any restart replays it
    ScalarField th0(4);
    th0.at(1, 1) = 1.0;
    Trajectory lin = etd_march(VelocityField(4), th0, make_forcing_law("zero"), TimeGrid{1.0, 32});
    CHECK(restart_consistency(lin, 16) <= 1e-12);
    CHECK(restart_consistency(lin, 0) == 0.0);

    // nonlinear: bounded by the scheme self-error
    Trajectory t64 = small_nonlinear(64);
    Trajectory t128 = small_nonlinear(128);
    double self_err = traj_distance(t64, t128, 2);
    CHECK(restart_consistency(t64, 32) <= 10.0 * std::max(self_err, 1e-12));

    // picard restart replays the converged fixed point
    PicardResult p = picard_solve(t64.u[0], t64.theta[0], t64.law, t64.grid, 25, 1e-11);
    REQUIRE(p.status == PicardStatus::Converged);
    CHECK(restart_consistency(p.trajectory, 0) == 0.0);
    CHECK(restart_consistency(p.trajectory, 32) <= 1e-9);

    CHECK_THROWS_AS(restart_consistency(t64, 64), Error);
    CHECK_THROWS_AS(restart_consistency(t64, -1), Error);
}

TEST_CASE("initial-condition attainment under refinement") {
    // node 0 equals the data exactly; the first node converges to it as dt -> 0
    DiagonalOperator opt(OperatorKind::TemperatureLaplacian, 6);
    ScalarField th0 = normalize_to(opt, 0.5, 1.0, sample_scalar(6, 99, 2.0));
    VelocityField u0(6);
    double prev = 1e300;
    for (int steps : {8, 16, 32, 64}) {
        Trajectory t = etd_march(u0, th0, make_forcing_law("zero"), TimeGrid{1.0, steps});
        CHECK(coeff_distance(t.theta[0], th0) == 0.0);
        double first = coeff_distance(t.theta[1], th0);
        CHECK(first < prev);
        prev = first;
    }
}

TEST_CASE("blowup detection aborts the march") {
    // Extreme buoyancy closes a growth loop through the viscous heating term
    // and pushes the state past 1e8 x initial within a few steps.
    ForcingLaw law = make_forcing_law("linear-buoyancy", 1e9);
    ScalarField th0(4);
    th0.at(1, 1) = 1e-4;
    CHECK_THROWS_AS(etd_march(VelocityField(4), th0, law, TimeGrid{4.0, 16}), Error);
}
