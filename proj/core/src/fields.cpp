#include "heatflow/fields.hpp"

#include <cmath>

namespace heatflow {

namespace detail {

CoeffArray::CoeffArray(int bandwidth) : bandwidth_(bandwidth) {
    if (bandwidth < 1) raise(Errc::invalid_bandwidth, "bandwidth must be >= 1");
    coeffs_.assign(static_cast<std::size_t>(bandwidth) * bandwidth, 0.0);
}

bool CoeffArray::finite() const {
    for (double c : coeffs_)
        if (!std::isfinite(c)) return false;
    return true;
}

double CoeffArray::l2_coeff_norm() const {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return std::sqrt(s);
}

}  // namespace detail

namespace {

void require_match(const DiagonalOperator& op, const detail::CoeffArray& f) {
    if (op.bandwidth() != f.bandwidth())
        raise(Errc::shape_error, "operator/field bandwidth mismatch");
}

template <class Field, class Fn>
Field map_eigen(const DiagonalOperator& op, const Field& f, Fn&& factor) {
    require_match(op, f);
    Field out = f;
    auto ev = op.eigenvalues().begin();
    for (double& c : out.coeffs()) c *= factor(*ev++);
    return out;
}

}  // namespace

template <class Field>
Field fractional_power(const DiagonalOperator& op, double alpha, const Field& f) {
    if (alpha < -1.0) raise(Errc::invalid_exponent, "fractional power below -1");
    if (alpha == 0.0) {
        require_match(op, f);
        return f;
    }
    return map_eigen(op, f, [alpha](double mu) { return std::pow(mu, alpha); });
}

template <class Field>
Field semigroup(const DiagonalOperator& op, double t, const Field& f) {
    if (!(t >= 0.0)) raise(Errc::invalid_time, "semigroup time must be >= 0");
    if (t == 0.0) {
        require_match(op, f);
        return f;
    }
    return map_eigen(op, f, [t](double mu) { return std::exp(-t * mu); });
}

double l2_norm(const detail::CoeffArray& f) { return f.l2_coeff_norm(); }

double fractional_norm(const DiagonalOperator& op, double alpha, const detail::CoeffArray& f) {
    require_match(op, f);
    if (alpha < -1.0) raise(Errc::invalid_exponent, "fractional power below -1");
    double s = 0.0;
    auto ev = op.eigenvalues().begin();
    for (double c : f.coeffs()) {
        double w = alpha == 0.0 ? 1.0 : std::pow(*ev, alpha);
        s += w * w * c * c;
        ++ev;
    }
    return std::sqrt(s);
}

double coeff_distance(const detail::CoeffArray& a, const detail::CoeffArray& b) {
    if (a.bandwidth() != b.bandwidth()) raise(Errc::shape_error, "bandwidth mismatch");
    double s = 0.0;
    auto ib = b.coeffs().begin();
    for (double ca : a.coeffs()) {
        double d = ca - *ib++;
        s += d * d;
    }
    return std::sqrt(s);
}

void axpy(double a, const detail::CoeffArray& x, detail::CoeffArray& y) {
    if (x.bandwidth() != y.bandwidth()) raise(Errc::shape_error, "bandwidth mismatch");
    auto ix = x.coeffs().begin();
    for (double& c : y.coeffs()) c += a * *ix++;
}

void scale(detail::CoeffArray& x, double a) {
    for (double& c : x.coeffs()) c *= a;
}

template ScalarField fractional_power<ScalarField>(const DiagonalOperator&, double,
                                                   const ScalarField&);
template VelocityField fractional_power<VelocityField>(const DiagonalOperator&, double,
                                                       const VelocityField&);
template ScalarField semigroup<ScalarField>(const DiagonalOperator&, double, const ScalarField&);
template VelocityField semigroup<VelocityField>(const DiagonalOperator&, double,
                                                const VelocityField&);

}  // namespace heatflow
