#pragma once

#include <cstdint>
#include <random>

#include "heatflow/fields.hpp"

namespace heatflow {

/// Deterministic standard-normal stream: mt19937_64 + Box-Muller, spelled
/// out here so sampled fields reproduce bit-identically for a given seed.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}
    double next();

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// i.i.d. N(0,1) coefficients damped by (k^2+l^2)^{-damping}; the default
/// damping 1 sits at the X^{1/2} regularity edge in two dimensions. Streams
/// are indexed per mode, so doubling the bandwidth extends a field without
/// changing the modes it already had. Fields are not normalized; see
/// normalize_to.
ScalarField sample_scalar(int bandwidth, std::uint64_t seed, double damping = 1.0);
VelocityField sample_velocity(int bandwidth, std::uint64_t seed, double damping = 1.0);

/// Scales the field so |A^alpha f|_2 equals target. Scaling a zero field to
/// a nonzero target raises invariant_violation; target 0 zeroes the field.
template <class Field>
Field normalize_to(const DiagonalOperator& op, double alpha, double target, Field f);

extern template ScalarField normalize_to<ScalarField>(const DiagonalOperator&, double, double,
                                                      ScalarField);
extern template VelocityField normalize_to<VelocityField>(const DiagonalOperator&, double, double,
                                                          VelocityField);

}  // namespace heatflow
