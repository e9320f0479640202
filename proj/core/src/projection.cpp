#include "heatflow/projection.hpp"

#include <Eigen/Cholesky>
#include <map>
#include <mutex>

#include "trig_tables.hpp"

namespace heatflow {

namespace {

using detail::Mat;
using detail::Vec;

// Gram matrix of the solenoidal basis under the interior-node quadrature.
// The cosine factors are not discretely orthogonal, so the matrix is not the
// identity; factoring it once makes the projection quadrature-orthogonal.
Mat solenoidal_gram(const detail::TrigTables& t) {
    const int K = t.bandwidth;
    const int N = t.resolution;
    Mat sx = t.si.transpose() * t.si;  // sum_i sin(k x_i) sin(k' x_i)
    Mat cx = t.ci.transpose() * t.ci;
    const double pref = 4.0 / ((N + 1.0) * (N + 1.0));
    Mat g(K * K, K * K);
    for (int k = 1; k <= K; ++k)
        for (int l = 1; l <= K; ++l) {
            const int row = (k - 1) * K + (l - 1);
            for (int kp = 1; kp <= K; ++kp)
                for (int lp = 1; lp <= K; ++lp) {
                    const int col = (kp - 1) * K + (lp - 1);
                    double v = double(l) * lp * sx(k - 1, kp - 1) * cx(l - 1, lp - 1) +
                               double(k) * kp * cx(k - 1, kp - 1) * sx(l - 1, lp - 1);
                    g(row, col) = pref * v * t.inv_sqrt_lam(k - 1, l - 1) *
                                  t.inv_sqrt_lam(kp - 1, lp - 1);
                }
        }
    return g;
}

std::mutex g_llt_mutex;
std::map<std::pair<int, int>, Eigen::LLT<Mat>> g_llt;

const Eigen::LLT<Mat>& gram_factor(int K, int N) {
    std::scoped_lock lock(g_llt_mutex);
    auto [it, inserted] = g_llt.try_emplace({K, N});
    if (inserted) {
        const auto& t = detail::trig_tables(K, N);
        it->second.compute(solenoidal_gram(t));
        if (it->second.info() != Eigen::Success)
            raise(Errc::resolution_error, "solenoidal basis not resolvable on this grid");
    }
    return it->second;
}

}  // namespace

VelocityField leray_project(const GridField& v, int bandwidth) {
    if (v.arity() != 2) raise(Errc::shape_error, "expected a vector grid field");
    const int N = v.resolution();
    if (N < bandwidth) raise(Errc::resolution_error, "grid resolution below target bandwidth");
    const auto& t = detail::trig_tables(bandwidth, N);
    const int K = bandwidth;

    Mat v1(N, N), v2(N, N);
    auto c0 = v.component(0);
    auto c1 = v.component(1);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            v1(i, j) = c0[static_cast<std::size_t>(i) * N + j];
            v2(i, j) = c1[static_cast<std::size_t>(i) * N + j];
        }

    Mat t1 = t.si.transpose() * v1 * t.ci;
    Mat t2 = t.ci.transpose() * v2 * t.si;
    Vec k = Vec::LinSpaced(K, 1.0, double(K));
    const double pref = (2.0 / M_PI) * std::pow(M_PI / (N + 1), 2);
    Mat m = pref * (t1 * k.asDiagonal() - k.asDiagonal() * t2).cwiseProduct(t.inv_sqrt_lam);

    Vec rhs(K * K);
    for (int a = 1; a <= K; ++a)
        for (int b = 1; b <= K; ++b) rhs((a - 1) * K + (b - 1)) = m(a - 1, b - 1);
    Vec sol = gram_factor(K, N).solve(rhs);

    VelocityField out(bandwidth);
    auto view = detail::coeff_view(out);
    for (int a = 1; a <= K; ++a)
        for (int b = 1; b <= K; ++b) view(a - 1, b - 1) = sol((a - 1) * K + (b - 1));
    return out;
}

VelocityField from_grid_velocity(const GridField& g, int bandwidth) {
    return leray_project(g, bandwidth);
}

}  // namespace heatflow
