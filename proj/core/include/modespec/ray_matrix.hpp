#pragma once

#include <Eigen/Dense>

#include "modespec/frame.hpp"

namespace modespec {

/// First-order ray transfer matrix acting on the column (x, y, px, py),
/// where px, py are optical direction angles (dimensionless). In these
/// variables free space of length d is x += d*px, and the scan matrices
/// below carry the Rayleigh range z0 in their off-diagonal blocks.
using RayMatrix = Eigen::Matrix4d;

/// Isotropic fractional-Fourier matrix: both transverse sectors rotate by
/// phi_plus/2 in (x, z0*p) phase space. Period 4π; equals -I at 2π.
RayMatrix s_plus(double phi_plus, const PhysicalFrame& frame);

/// Astigmatic counterpart: x-sector rotates by +phi_minus/2, y-sector by
/// -phi_minus/2. Period 4π; equals the image inversion (-I) at 2π.
RayMatrix s_minus(double phi_minus, const PhysicalFrame& frame);

/// Max-entry of |MᵀJM − J| with J the standard symplectic form.
/// Zero (to roundoff) for every physically realizable train.
double symplectic_defect(const RayMatrix& m);

}  // namespace modespec
