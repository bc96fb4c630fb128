#pragma once

#include "modespec/field.hpp"

namespace modespec {

/// ψ(x,y) -> ψ(-x,-y) by exact index reversal (the grid is mirror
/// symmetric). Involution.
ComplexField apply_parity(const ComplexField& field);

/// Geometric rotation of the field by `angle`, 6-point Lagrange resampling
/// with zero fill outside the window. Rotation by π reduces to exact parity
/// because the rotated positions land back on grid nodes.
ComplexField apply_rotation(const ComplexField& field, double angle);

}  // namespace modespec
