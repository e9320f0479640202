#include "heatflow/rhs.hpp"

#include "trig_tables.hpp"

namespace heatflow {

namespace {

using detail::Mat;
using detail::Vec;

int dealias_resolution(int bandwidth) { return 2 * bandwidth; }

void require_same(int a, int b) {
    if (a != b) raise(Errc::shape_error, "field bandwidth mismatch");
}

Mat dissipation_values(const detail::TrigTables& t, const VelocityField& u,
                       const VelocityField& v) {
    Mat d11, d21, d12, d22, e11, e21, e12, e22;
    detail::velocity_gradients(t, u, true, d11, d21, d12, d22);
    detail::velocity_gradients(t, v, true, e11, e21, e12, e22);
    Mat du = 0.5 * (d21 + d12);
    Mat dv = 0.5 * (e21 + e12);
    return 2.0 * (d11.cwiseProduct(e11) + 2.0 * du.cwiseProduct(dv) + d22.cwiseProduct(e22));
}

/// int sin(m x) cos(k x) dx for m = 1..rows, k = 1..cols.
Mat sin_cos_table(int rows, int cols) {
    Mat t(rows, cols);
    for (int m = 1; m <= rows; ++m)
        for (int k = 1; k <= cols; ++k) t(m - 1, k - 1) = detail::half_period_sin_cos(m, k);
    return t;
}

}  // namespace

std::vector<double> dissipation_grid(const VelocityField& u, const VelocityField& v) {
    require_same(u.bandwidth(), v.bandwidth());
    const int K = u.bandwidth();
    const auto& t = detail::trig_tables(K, dealias_resolution(K));
    Mat phi = dissipation_values(t, u, v);
    std::vector<double> out(static_cast<std::size_t>(phi.rows()) * phi.cols());
    for (int i = 0; i < phi.rows(); ++i)
        for (int j = 0; j < phi.cols(); ++j)
            out[static_cast<std::size_t>(i) * phi.cols() + j] = phi(i, j);
    return out;
}

ScalarField dissipation(const VelocityField& u, const VelocityField& v) {
    require_same(u.bandwidth(), v.bandwidth());
    const int K = u.bandwidth();
    const auto& t = detail::trig_tables(K, dealias_resolution(K));
    Mat phi = dissipation_values(t, u, v);
    // Exact route to the sine projection: the integrand is a pure cosine
    // polynomial, so expand in cosines under trapezoid quadrature and convert
    // with half-period integrals.
    Mat ch = detail::cosine_analyze_trap(t, phi);
    Mat a = (2.0 / M_PI) * (t.isc * ch * t.isc.transpose());
    ScalarField out(K);
    detail::coeff_view(out) = a;
    return out;
}

ScalarField dissipation(const VelocityField& u) { return dissipation(u, u); }

VelocityField advect_velocity(const VelocityField& u, const VelocityField& v) {
    require_same(u.bandwidth(), v.bandwidth());
    const int K = u.bandwidth();
    const auto& t = detail::trig_tables(K, dealias_resolution(K));
    Mat u1, u2, d11, d21, d12, d22;
    detail::velocity_grid(t, u, true, u1, u2);
    detail::velocity_gradients(t, v, true, d11, d21, d12, d22);
    Mat c1 = u1.cwiseProduct(d11) + u2.cwiseProduct(d21);
    Mat c2 = u1.cwiseProduct(d12) + u2.cwiseProduct(d22);
    Mat b = detail::solenoidal_analyze_trap(t, c1, c2);
    VelocityField out(K);
    detail::coeff_view(out) = b;
    return out;
}

ScalarField advect_scalar(const VelocityField& u, const ScalarField& theta) {
    require_same(u.bandwidth(), theta.bandwidth());
    const int K = u.bandwidth();
    const auto& t = detail::trig_tables(K, dealias_resolution(K));
    Mat u1, u2, tx, ty;
    detail::velocity_grid(t, u, false, u1, u2);
    detail::scalar_gradients(t, theta, false, tx, ty);
    Mat h = u1.cwiseProduct(tx) + u2.cwiseProduct(ty);
    Mat a = detail::sine_analyze(t, h, K);
    ScalarField out(K);
    detail::coeff_view(out) = a;
    return out;
}

VelocityField convection_velocity(const VelocityField& u) {
    VelocityField out = advect_velocity(u, u);
    scale(out, -1.0);
    return out;
}

VelocityField buoyancy(const ScalarField& theta, const ForcingLaw& law) {
    const int K = theta.bandwidth();
    const int N = dealias_resolution(K);
    const auto& t = detail::trig_tables(K, N);
    Mat th = detail::scalar_grid(t, theta, false);
    Mat f1(N, N), f2(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            auto f = law.evaluator(th(i, j));
            f1(i, j) = f[0];
            f2(i, j) = f[1];
        }
    // Sine-expand both components at the full grid bandwidth, then pair with
    // the solenoidal basis through half-period integrals.
    Mat a1 = detail::sine_analyze(t, f1, N);
    Mat a2 = detail::sine_analyze(t, f2, N);
    Mat ism = sin_cos_table(N, K);
    Vec k = Vec::LinSpaced(K, 1.0, double(K));
    Mat term1 = a1.topRows(K) * ism;                       // (K,K): sum_m a1(k,m) I(m,l)
    Mat term2 = (ism.transpose() * a2).leftCols(K);        // (K,K): sum_m I(m,k) a2(m,l)
    Mat b = (2.0 / M_PI) *
            (term1 * k.asDiagonal() - k.asDiagonal() * term2).cwiseProduct(t.inv_sqrt_lam);
    VelocityField out(K);
    detail::coeff_view(out) = b;
    return out;
}

ScalarField convection_temperature(const VelocityField& u, const ScalarField& theta) {
    ScalarField out = advect_scalar(u, theta);
    scale(out, -1.0);
    return out;
}

RhsValue rhs_full(const VelocityField& u, const ScalarField& theta, const ForcingLaw& law) {
    require_same(u.bandwidth(), theta.bandwidth());
    RhsValue out{convection_velocity(u), convection_temperature(u, theta)};
    axpy(1.0, buoyancy(theta, law), out.f);
    axpy(1.0, dissipation(u), out.g);
    return out;
}

}  // namespace heatflow
