#pragma once

#include "modespec/optical_train.hpp"

namespace modespec {

/// Three fixed spherical lenses spaced z0 apart realizing s_plus(phi_plus)
/// for phi_plus in [π, 3π]:
///   f1 = f3 = z0 / (1 - cot(phi_plus/4)),   f2 = z0 / (2 - sin(phi_plus/2)),
/// with f1 flat at phi_plus = π. Designed lenses are emitted with ñ = 2 so
/// the stored radius equals the focal length.
/// Throws RangeError outside the interval (angles beyond it are reached by
/// switching the compensator arm, not by retuning this train).
OpticalTrain design_s_plus(double phi_plus, const PhysicalFrame& frame);

/// Scissor angle Ω solving cot(phi_minus/4) = -2 sin(Ω/2) on [-π/3, π/3]
/// by bisection to 1e-13 (monotonic on the bracket).
double solve_scissor_angle(double phi_minus);

/// Three counter-rotated cylindrical-lens pairs spaced z0/2 apart realizing
/// s_minus(phi_minus) for phi_minus in [π, 3π]. Outer pairs f = z0/2 at
/// ±(π-Ω)/4, middle pair f = z0/4 at ±(3π-phi_minus)/4.
OpticalTrain design_s_minus(double phi_minus, const PhysicalFrame& frame);

enum class CompensatorTarget { Identity, MinusIdentity };

struct CompensatorDesign {
    OpticalTrain train;
    double focal_length = 0.0;
    double residual = 0.0;   // matrix defect of the solved train
};

/// Places `lens_count` (2 or 4) identical spherical lenses at positions
/// (2j-1)·L/(2·lens_count) along an arm of length L and solves for the
/// single focal length reaching the target matrix. The focal length is
/// found by a golden-section defect minimization over f in [L/60, 20L/3].
/// Throws DesignError (carrying the bracket) when no solution exists,
/// e.g. Identity with only two lenses over a positive arm length.
CompensatorDesign solve_compensator(CompensatorTarget target, int lens_count,
                                    double arm_length);

}  // namespace modespec
