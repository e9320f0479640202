#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "heatflow/operators.hpp"

namespace heatflow {

namespace detail {

/// Shared coefficient storage for both spectral field types: one real
/// coefficient per mode (k,l), 1 <= k,l <= K, stored k-major.
class CoeffArray {
  public:
    CoeffArray() = default;
    explicit CoeffArray(int bandwidth);

    int bandwidth() const { return bandwidth_; }
    double& at(int k, int l) { return coeffs_[index(k, l)]; }
    double at(int k, int l) const { return coeffs_[index(k, l)]; }
    std::span<double> coeffs() { return coeffs_; }
    std::span<const double> coeffs() const { return coeffs_; }

    bool finite() const;
    double l2_coeff_norm() const;

  private:
    std::size_t index(int k, int l) const {
        if (k < 1 || l < 1 || k > bandwidth_ || l > bandwidth_)
            raise(Errc::shape_error, "coefficient index out of range");
        return static_cast<std::size_t>((k - 1) * bandwidth_ + (l - 1));
    }

    int bandwidth_ = 0;
    std::vector<double> coeffs_;
};

}  // namespace detail

/// Temperature-like field: coefficients on the orthonormal Dirichlet basis
/// e_{kl}(x,y) = (2/pi) sin(kx) sin(ly). Vanishes on the boundary by
/// construction; |f|_L2 equals the euclidean norm of the coefficients.
class ScalarField : public detail::CoeffArray {
  public:
    ScalarField() = default;
    explicit ScalarField(int bandwidth) : CoeffArray(bandwidth) {}
};

/// Divergence-free velocity: coefficients on the orthonormal solenoidal
/// basis w_{kl} = curl psi_{kl} with stream function
/// psi_{kl} = (2/pi)(k^2+l^2)^{-1/2} sin(kx) sin(ly), so
///   w_{kl} = (2/pi)(k^2+l^2)^{-1/2} ( l sin(kx)cos(ly), -k cos(kx)sin(ly) ).
/// div u = 0 and u.nu = 0 hold identically; each basis element is a Stokes
/// eigenfunction with eigenvalue k^2+l^2, and |u|_L2 is the euclidean norm
/// of the coefficients.
class VelocityField : public detail::CoeffArray {
  public:
    VelocityField() = default;
    explicit VelocityField(int bandwidth) : CoeffArray(bandwidth) {}

    /// Coefficient of sin(kx)sin(ly) in the stream function.
    double stream_coeff(int k, int l) const {
        return at(k, l) * (2.0 / M_PI) / std::sqrt(double(k) * k + double(l) * l);
    }
    void set_stream_coeff(int k, int l, double c) {
        at(k, l) = c * (M_PI / 2.0) * std::sqrt(double(k) * k + double(l) * l);
    }
};

// Entrywise spectral calculus. Both operations require the field bandwidth
// to match the operator bandwidth and act diagonally in coefficients.

/// Multiplies each coefficient by eigenvalue^alpha; alpha = 0 is the
/// identity. Negative alpha down to -1 is allowed (the spectrum is bounded
/// below by 2).
template <class Field>
Field fractional_power(const DiagonalOperator& op, double alpha, const Field& f);

/// Multiplies each coefficient by exp(-t * eigenvalue), t >= 0.
template <class Field>
Field semigroup(const DiagonalOperator& op, double t, const Field& f);

/// Parseval L2 norm (exact in coefficients).
double l2_norm(const detail::CoeffArray& f);

/// |A^alpha f|_L2 via Parseval (exact in coefficients).
double fractional_norm(const DiagonalOperator& op, double alpha, const detail::CoeffArray& f);

double coeff_distance(const detail::CoeffArray& a, const detail::CoeffArray& b);

// Small vector-space helpers used by the solvers.
void axpy(double a, const detail::CoeffArray& x, detail::CoeffArray& y);  // y += a*x
void scale(detail::CoeffArray& x, double a);

extern template ScalarField fractional_power<ScalarField>(const DiagonalOperator&, double,
                                                          const ScalarField&);
extern template VelocityField fractional_power<VelocityField>(const DiagonalOperator&, double,
                                                              const VelocityField&);
extern template ScalarField semigroup<ScalarField>(const DiagonalOperator&, double,
                                                   const ScalarField&);
extern template VelocityField semigroup<VelocityField>(const DiagonalOperator&, double,
                                                       const VelocityField&);

}  // namespace heatflow
