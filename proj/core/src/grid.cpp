#include "heatflow/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "trig_tables.hpp"

namespace heatflow {

namespace detail {

double half_period_sin_cos(int k, int m) {
    if (((k + m) & 1) == 0) return 0.0;
    return 2.0 * k / (double(k) * k - double(m) * m);
}

namespace {

TrigTables build_tables(int K, int N) {
    TrigTables t;
    t.bandwidth = K;
    t.resolution = N;
    const double h = M_PI / (N + 1);

    t.si.resize(N, K);
    t.ci.resize(N, K);
    for (int i = 1; i <= N; ++i)
        for (int k = 1; k <= K; ++k) {
            t.si(i - 1, k - 1) = std::sin(k * i * h);
            t.ci(i - 1, k - 1) = std::cos(k * i * h);
        }

    t.sc.resize(N + 2, K);
    t.cc.resize(N + 2, K);
    t.c2.resize(N + 2, 2 * K + 1);
    for (int i = 0; i <= N + 1; ++i) {
        for (int k = 1; k <= K; ++k) {
            t.sc(i, k - 1) = std::sin(k * i * h);
            t.cc(i, k - 1) = std::cos(k * i * h);
        }
        for (int m = 0; m <= 2 * K; ++m) t.c2(i, m) = std::cos(m * i * h);
    }

    t.trap = Vec::Constant(N + 2, h);
    t.trap(0) *= 0.5;
    t.trap(N + 1) *= 0.5;

    t.isc.resize(K, 2 * K + 1);
    for (int k = 1; k <= K; ++k)
        for (int m = 0; m <= 2 * K; ++m) t.isc(k - 1, m) = half_period_sin_cos(k, m);

    t.lam.resize(K, K);
    for (int k = 1; k <= K; ++k)
        for (int l = 1; l <= K; ++l) t.lam(k - 1, l - 1) = double(k) * k + double(l) * l;
    t.inv_sqrt_lam = t.lam.cwiseSqrt().cwiseInverse();
    return t;
}

std::mutex g_tables_mutex;
std::map<std::pair<int, int>, TrigTables> g_tables;

}  // namespace

const TrigTables& trig_tables(int K, int N) {
    std::scoped_lock lock(g_tables_mutex);
    auto [it, inserted] = g_tables.try_emplace({K, N});
    if (inserted) it->second = build_tables(K, N);
    return it->second;
}

Mat scalar_grid(const TrigTables& t, const ScalarField& f, bool closed) {
    const Mat& S = closed ? t.sc : t.si;
    Mat a = coeff_view(f);
    return (2.0 / M_PI) * S * a * S.transpose();
}

void velocity_grid(const TrigTables& t, const VelocityField& u, bool closed, Mat& u1, Mat& u2) {
    const Mat& S = closed ? t.sc : t.si;
    const Mat& C = closed ? t.cc : t.ci;
    const int K = t.bandwidth;
    Mat c = (2.0 / M_PI) * coeff_view(u).cwiseProduct(t.inv_sqrt_lam);
    Vec k = Vec::LinSpaced(K, 1.0, double(K));
    u1 = S * (c * k.asDiagonal()) * C.transpose();
    u2 = -(C * (k.asDiagonal() * c)) * S.transpose();
}

void velocity_gradients(const TrigTables& t, const VelocityField& u, bool closed, Mat& d11,
                        Mat& d21, Mat& d12, Mat& d22) {
    const Mat& S = closed ? t.sc : t.si;
    const Mat& C = closed ? t.cc : t.ci;
    const int K = t.bandwidth;
    Mat c = (2.0 / M_PI) * coeff_view(u).cwiseProduct(t.inv_sqrt_lam);
    Vec k = Vec::LinSpaced(K, 1.0, double(K));
    Mat ckl = k.asDiagonal() * c * k.asDiagonal();  // c * k * l
    Mat ck2 = (k.array().square().matrix()).asDiagonal() * c;
    Mat cl2 = c * (k.array().square().matrix()).asDiagonal();
    d11 = C * ckl * C.transpose();
    d21 = -(S * cl2 * S.transpose());
    d12 = S * ck2 * S.transpose();
    d22 = -(C * ckl * C.transpose());
}

void scalar_gradients(const TrigTables& t, const ScalarField& f, bool closed, Mat& gx, Mat& gy) {
    const Mat& S = closed ? t.sc : t.si;
    const Mat& C = closed ? t.cc : t.ci;
    const int K = t.bandwidth;
    Mat a = coeff_view(f);
    Vec k = Vec::LinSpaced(K, 1.0, double(K));
    gx = (2.0 / M_PI) * C * (k.asDiagonal() * a) * S.transpose();
    gy = (2.0 / M_PI) * S * (a * k.asDiagonal()) * C.transpose();
}

Mat sine_analyze(const TrigTables& t, const Mat& values, int modes) {
    const int N = t.resolution;
    // Needs sin(m x_i) up to `modes`; reuse t.si when possible.
    if (modes <= t.bandwidth) {
        Mat s = t.si.leftCols(modes);
        return (M_PI / 2.0) * std::pow(2.0 / (N + 1), 2) * s.transpose() * values * s;
    }
    const double h = M_PI / (N + 1);
    Mat s(N, modes);
    for (int i = 1; i <= N; ++i)
        for (int m = 1; m <= modes; ++m) s(i - 1, m - 1) = std::sin(m * i * h);
    return (M_PI / 2.0) * std::pow(2.0 / (N + 1), 2) * s.transpose() * values * s;
}

Mat solenoidal_analyze_trap(const TrigTables& t, const Mat& v1, const Mat& v2) {
    const int K = t.bandwidth;
    Mat Sw = t.trap.asDiagonal() * t.sc;
    Mat Cw = t.trap.asDiagonal() * t.cc;
    Mat t1 = Sw.transpose() * v1 * Cw;  // paired with l sin(kx) cos(ly)
    Mat t2 = Cw.transpose() * v2 * Sw;  // paired with -k cos(kx) sin(ly)
    Vec k = Vec::LinSpaced(K, 1.0, double(K));
    Mat b = (t1 * k.asDiagonal() - k.asDiagonal() * t2).cwiseProduct(t.inv_sqrt_lam);
    return (2.0 / M_PI) * b;
}

Mat cosine_analyze_trap(const TrigTables& t, const Mat& values) {
    const int K = t.bandwidth;
    Mat Cw = t.trap.asDiagonal() * t.c2;
    Mat raw = Cw.transpose() * values * Cw;
    Vec scale(2 * K + 1);
    scale(0) = M_PI;
    for (int m = 1; m <= 2 * K; ++m) scale(m) = M_PI / 2.0;
    return scale.cwiseInverse().asDiagonal() * raw * scale.cwiseInverse().asDiagonal();
}

}  // namespace detail

using detail::Mat;

GridField::GridField(int resolution, int arity) : resolution_(resolution), arity_(arity) {
    if (resolution < 1) raise(Errc::resolution_error, "resolution must be >= 1");
    if (arity != 1 && arity != 2) raise(Errc::shape_error, "arity must be 1 or 2");
    values_.assign(static_cast<std::size_t>(arity) * resolution * resolution, 0.0);
}

double GridField::node(int i) const { return M_PI * i / (resolution_ + 1); }

std::size_t GridField::index(int comp, int i, int j) const {
    if (comp < 0 || comp >= arity_ || i < 1 || i > resolution_ || j < 1 || j > resolution_)
        raise(Errc::shape_error, "grid index out of range");
    return (static_cast<std::size_t>(comp) * resolution_ + (i - 1)) * resolution_ + (j - 1);
}

std::span<double> GridField::component(int comp) {
    if (comp < 0 || comp >= arity_) raise(Errc::shape_error, "component out of range");
    return {values_.data() + static_cast<std::size_t>(comp) * resolution_ * resolution_,
            static_cast<std::size_t>(resolution_) * resolution_};
}

std::span<const double> GridField::component(int comp) const {
    return const_cast<GridField*>(this)->component(comp);
}

bool GridField::finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

namespace {

void copy_plane(const Mat& m, std::span<double> out) {
    const int n = int(m.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = m(i, j);
}

Mat plane(const GridField& g, int comp) {
    const int n = g.resolution();
    Mat m(n, n);
    auto v = g.component(comp);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<std::size_t>(i) * n + j];
    return m;
}

void require_resolution(int K, int N) {
    if (N < K) raise(Errc::resolution_error, "grid resolution below field bandwidth");
}

}  // namespace

GridField to_grid(const ScalarField& f, int resolution) {
    require_resolution(f.bandwidth(), resolution);
    const auto& t = detail::trig_tables(f.bandwidth(), resolution);
    GridField g = GridField::scalar(resolution);
    copy_plane(detail::scalar_grid(t, f, false), g.component(0));
    return g;
}

GridField to_grid(const VelocityField& u, int resolution) {
    require_resolution(u.bandwidth(), resolution);
    const auto& t = detail::trig_tables(u.bandwidth(), resolution);
    Mat u1, u2;
    detail::velocity_grid(t, u, false, u1, u2);
    GridField g = GridField::vector2(resolution);
    copy_plane(u1, g.component(0));
    copy_plane(u2, g.component(1));
    return g;
}

ScalarField from_grid_scalar(const GridField& g, int bandwidth) {
    if (g.arity() != 1) raise(Errc::shape_error, "expected a scalar grid field");
    require_resolution(bandwidth, g.resolution());
    const auto& t = detail::trig_tables(bandwidth, g.resolution());
    Mat a = detail::sine_analyze(t, plane(g, 0), bandwidth);
    ScalarField f(bandwidth);
    detail::coeff_view(f) = a;
    return f;
}

double norm_lp(const GridField& g, double p) {
    if (!(p >= 1.0)) raise(Errc::invalid_exponent, "p must be >= 1");
    if (!g.finite()) raise(Errc::invariant_violation, "grid values not finite");
    const int n = g.resolution();
    if (std::isinf(p)) {
        double m = 0.0;
        for (int c = 0; c < g.arity(); ++c)
            for (double v : g.component(c)) m = std::max(m, std::abs(v));
        return m;
    }
    const double w = std::pow(M_PI / (n + 1), 2);
    double s = 0.0;
    if (g.arity() == 1) {
        for (double v : g.component(0)) s += std::pow(std::abs(v), p);
    } else {
        auto v1 = g.component(0);
        auto v2 = g.component(1);
        for (std::size_t i = 0; i < v1.size(); ++i)
            s += std::pow(std::hypot(v1[i], v2[i]), p);  // pointwise euclidean magnitude
    }
    return std::pow(w * s, 1.0 / p);
}

double norm_fractional(const DiagonalOperator& op, double alpha, double p, const ScalarField& f,
                       int resolution) {
    int n = resolution > 0 ? resolution : 2 * f.bandwidth();
    return norm_lp(to_grid(fractional_power(op, alpha, f), n), p);
}

double norm_fractional(const DiagonalOperator& op, double alpha, double p,
                       const VelocityField& f, int resolution) {
    int n = resolution > 0 ? resolution : 2 * f.bandwidth();
    return norm_lp(to_grid(fractional_power(op, alpha, f), n), p);
}

double inner_product(const GridField& a, const GridField& b) {
    if (a.resolution() != b.resolution() || a.arity() != b.arity())
        raise(Errc::shape_error, "grid shape mismatch");
    const double w = std::pow(M_PI / (a.resolution() + 1), 2);
    double s = 0.0;
    for (int c = 0; c < a.arity(); ++c) {
        auto va = a.component(c);
        auto vb = b.component(c);
        for (std::size_t i = 0; i < va.size(); ++i) s += va[i] * vb[i];
    }
    return w * s;
}

GridField gradient_grid(const ScalarField& f, int resolution) {
    require_resolution(f.bandwidth(), resolution);
    const auto& t = detail::trig_tables(f.bandwidth(), resolution);
    Mat gx, gy;
    detail::scalar_gradients(t, f, false, gx, gy);
    GridField g = GridField::vector2(resolution);
    copy_plane(gx, g.component(0));
    copy_plane(gy, g.component(1));
    return g;
}

std::array<GridField, 4> velocity_gradient_grid(const VelocityField& u, int resolution) {
    require_resolution(u.bandwidth(), resolution);
    const auto& t = detail::trig_tables(u.bandwidth(), resolution);
    Mat d11, d21, d12, d22;
    detail::velocity_gradients(t, u, false, d11, d21, d12, d22);
    std::array<GridField, 4> out = {GridField::scalar(resolution), GridField::scalar(resolution),
                                    GridField::scalar(resolution), GridField::scalar(resolution)};
    copy_plane(d11, out[0].component(0));
    copy_plane(d21, out[1].component(0));
    copy_plane(d12, out[2].component(0));
    copy_plane(d22, out[3].component(0));
    return out;
}

GridField divergence_grid(const VelocityField& u, int resolution) {
    auto d = velocity_gradient_grid(u, resolution);
    GridField g = GridField::scalar(resolution);
    auto v = g.component(0);
    auto d11 = d[0].component(0);
    auto d22 = d[3].component(0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = d11[i] + d22[i];
    return g;
}

}  // namespace heatflow
