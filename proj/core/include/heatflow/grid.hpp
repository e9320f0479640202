#pragma once

#include <array>
#include <vector>

#include "heatflow/fields.hpp"

namespace heatflow {

/// Collocation values on the interior nodes (x_i, y_j) = (i,j) * pi/(N+1),
/// 1 <= i,j <= N. Scalar fields carry one value per node, velocities two.
class GridField {
  public:
    GridField() = default;
    GridField(int resolution, int arity);

    static GridField scalar(int resolution) { return GridField(resolution, 1); }
    static GridField vector2(int resolution) { return GridField(resolution, 2); }

    int resolution() const { return resolution_; }
    int arity() const { return arity_; }

    double node(int i) const;  // i-th interior coordinate, 1-based

    double& value(int comp, int i, int j) { return values_[index(comp, i, j)]; }
    double value(int comp, int i, int j) const { return values_[index(comp, i, j)]; }
    std::span<double> component(int comp);
    std::span<const double> component(int comp) const;

    bool finite() const;

  private:
    std::size_t index(int comp, int i, int j) const;

    int resolution_ = 0;
    int arity_ = 1;
    std::vector<double> values_;  // component-major, then i-major
};

/// Synthesis onto the interior grid. Requires N >= K.
GridField to_grid(const ScalarField& f, int resolution);
GridField to_grid(const VelocityField& u, int resolution);

/// Analysis back to bandwidth K. Exact round trip (to round-off) for any
/// bandwidth-K field with N >= K. The scalar path is the discrete sine
/// expansion; the vector path is the quadrature-orthogonal projection onto
/// the solenoidal basis (see projection.hpp).
ScalarField from_grid_scalar(const GridField& g, int bandwidth);
VelocityField from_grid_velocity(const GridField& g, int bandwidth);

/// Uniform-weight quadrature of the L^p(Omega) norm, weight (pi/(N+1))^2 per
/// interior node; p = infinity is the max of |values| over nodes and
/// components. Accuracy is O(N^-2) for integrands vanishing on the boundary
/// and O(N^-1) otherwise (missing boundary layer of the open square).
double norm_lp(const GridField& g, double p);

/// |A^alpha f|_{L^p} as the composition norm_lp(to_grid(A^alpha f), p);
/// resolution 0 picks 2x the bandwidth. At p = 2 the quadrature is exact and
/// the value matches fractional_norm to round-off.
double norm_fractional(const DiagonalOperator& op, double alpha, double p,
                       const ScalarField& f, int resolution = 0);
double norm_fractional(const DiagonalOperator& op, double alpha, double p,
                       const VelocityField& f, int resolution = 0);

/// Interior-node quadrature inner product (sums over all components).
double inner_product(const GridField& a, const GridField& b);

/// Pointwise evaluation helpers for derivative fields of spectral data.
/// Gradient of a scalar field / full velocity gradient on the interior grid.
GridField gradient_grid(const ScalarField& f, int resolution);
/// Components ordered (d1u1, d2u1, d1u2, d2u2).
std::array<GridField, 4> velocity_gradient_grid(const VelocityField& u, int resolution);

/// div u sampled pseudo-spectrally (d1u1 + d2u2); identically zero for the
/// curl construction up to round-off.
GridField divergence_grid(const VelocityField& u, int resolution);

}  // namespace heatflow
