#pragma once

// Internal: cached trigonometric synthesis/analysis tables per
// (bandwidth, resolution) pair, plus closed-form half-period integrals.

#include <Eigen/Dense>

#include "heatflow/fields.hpp"

namespace heatflow::detail {

using Mat = Eigen::MatrixXd;
using MatRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

inline Eigen::Map<const MatRM> coeff_view(const CoeffArray& f) {
    return {f.coeffs().data(), f.bandwidth(), f.bandwidth()};
}
inline Eigen::Map<MatRM> coeff_view(CoeffArray& f) {
    return {f.coeffs().data(), f.bandwidth(), f.bandwidth()};
}

/// int_0^pi sin(kx) cos(mx) dx = 2k/(k^2-m^2) for odd k+m, else 0.
double half_period_sin_cos(int k, int m);

struct TrigTables {
    int bandwidth = 0;   // K
    int resolution = 0;  // N

    Mat si, ci;  // (N, K): sin/cos(k x_i) at interior nodes x_i = i pi/(N+1)
    Mat sc, cc;  // (N+2, K): same at closed nodes x_0..x_{N+1}
    Mat c2;      // (N+2, 2K+1): cos(m x) for m = 0..2K at closed nodes
    Vec trap;    // (N+2): trapezoid weights, pi/(N+1) halved at the ends
    Mat isc;     // (K, 2K+1): half_period_sin_cos(k, m)
    Mat lam;     // (K, K): k^2 + l^2
    Mat inv_sqrt_lam;
};

/// Thread-safe cache keyed by (bandwidth, resolution).
const TrigTables& trig_tables(int bandwidth, int resolution);

// Synthesis at interior (closed = false) or closed (true) nodes. Velocity
// uses the orthonormal curl basis from fields.hpp.
Mat scalar_grid(const TrigTables& t, const ScalarField& f, bool closed);
void velocity_grid(const TrigTables& t, const VelocityField& u, bool closed, Mat& u1, Mat& u2);
// (d1u1, d2u1, d1u2, d2u2)
void velocity_gradients(const TrigTables& t, const VelocityField& u, bool closed, Mat& d11,
                        Mat& d21, Mat& d12, Mat& d22);
void scalar_gradients(const TrigTables& t, const ScalarField& f, bool closed, Mat& gx, Mat& gy);

/// Discrete sine analysis on the interior grid, returning the coefficient
/// matrix of the orthonormal sine basis up to frequency `modes` (<= N).
/// Exact for sine polynomials of per-axis frequency <= N.
Mat sine_analyze(const TrigTables& t, const Mat& values, int modes);

/// Trapezoid (closed-grid) analysis against the orthonormal solenoidal
/// basis; exact for fields matching the basis parity with frequencies
/// < 2(N+1) (all dealiased quadratic products qualify).
Mat solenoidal_analyze_trap(const TrigTables& t, const Mat& v1, const Mat& v2);

/// Trapezoid analysis against cos(mx)cos(m'y), m, m' = 0..2K; exact for
/// cosine polynomials with frequencies < 2(N+1).
Mat cosine_analyze_trap(const TrigTables& t, const Mat& values);

}  // namespace heatflow::detail
