#pragma once

#include "heatflow/grid.hpp"

namespace heatflow {

/// Projection of an interior-grid vector field onto the bandwidth-K
/// solenoidal stream basis, orthogonal with respect to the interior-node
/// quadrature inner product (the basis Gram matrix under that quadrature is
/// factored once per (K,N) and cached). Consequences, all to round-off:
/// idempotence, self-adjointness <Pv, v-Pv>_N = 0, and exact recovery of
/// fields already in the span. Gradient fields are annihilated to
/// quadrature accuracy.
VelocityField leray_project(const GridField& v, int bandwidth);

}  // namespace heatflow
