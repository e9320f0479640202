#pragma once

#include "heatflow/forcing.hpp"
#include "heatflow/grid.hpp"

namespace heatflow {

/// Nonlinear terms of the coupled system
///   d_t u + A u = F(u, theta) = -P(u.grad)u + P f(theta),
///   d_t theta + B theta = G(u, theta) = -(u.grad)theta + Phi(u),
/// evaluated pseudo-spectrally on a 2K dealiasing grid and projected back to
/// bandwidth K. Quadratic products are trigonometric polynomials, so every
/// projection below is exact (round-off only): the solenoidal analysis uses
/// boundary-inclusive trapezoid quadrature (under which the basis is exactly
/// orthonormal), sine-structured products use the discrete sine expansion,
/// and cosine-structured products are expanded in cosines first and converted
/// with closed-form half-period integrals. Pointwise forcing laws f share the
/// same grid; non-polynomial laws carry an aliasing remainder bounded by
/// refinement instead.

/// Viscous heating 2 D(u):D(v), D(u) = (grad u + (grad u)^T)/2, projected to
/// the scalar basis at the input bandwidth. Phi(u,u) >= 0 pointwise.
ScalarField dissipation(const VelocityField& u, const VelocityField& v);
ScalarField dissipation(const VelocityField& u);

/// Grid values of 2 D(u):D(v) on the closed dealiasing grid (used by the
/// pointwise nonnegativity checks). For u = v this equals
/// 4 psi_xy^2 + (psi_yy - psi_xx)^2 per node.
std::vector<double> dissipation_grid(const VelocityField& u, const VelocityField& v);

/// P(u.grad)v at the input bandwidth (bilinear form of the convection term).
VelocityField advect_velocity(const VelocityField& u, const VelocityField& v);

/// (u.grad)theta projected to the scalar basis (bilinear form).
ScalarField advect_scalar(const VelocityField& u, const ScalarField& theta);

/// -P(u.grad)u at the input bandwidth.
VelocityField convection_velocity(const VelocityField& u);

/// P f(theta) at the input bandwidth.
VelocityField buoyancy(const ScalarField& theta, const ForcingLaw& law);

/// -(u.grad)theta at the input bandwidth.
ScalarField convection_temperature(const VelocityField& u, const ScalarField& theta);

struct RhsValue {
    VelocityField f;  // -P(u.grad)u + P f(theta)
    ScalarField g;    // -(u.grad)theta + Phi(u)
};

/// Composition of the four terms above (componentwise identical to calling
/// them separately).
RhsValue rhs_full(const VelocityField& u, const ScalarField& theta, const ForcingLaw& law);

}  // namespace heatflow
