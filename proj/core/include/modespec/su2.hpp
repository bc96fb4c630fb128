#pragma once

#include <Eigen/Dense>

#include "modespec/modes.hpp"

namespace modespec {

/// Mode-space generators. In the HG basis:
///   N  is diagonal with (nx+ny)/2,
///   Lx is diagonal with (nx-ny)/2,
///   Ly, Lz are the corresponding two-mode ladder combinations,
/// and [La, Lb] = i eps_abc Lc with N commuting with all three.
enum class Generator { Lx, Ly, Lz, N };

/// Dense Hermitian matrix of a generator on the truncated mode space of
/// total order <= max_order, basis in canonical (order, nx) order.
/// Block-diagonal in total order: all generators conserve nx+ny.
struct OperatorMatrix {
    Generator kind;
    int max_order = 0;
    Eigen::MatrixXcd elements;
};

OperatorMatrix generator_matrix(Generator kind, int max_order);

/// exp(-i*angle*L_{theta,phi}) with L_{theta,phi} = u_r(theta,phi)·(Lx,Ly,Lz),
/// applied blockwise per total order. Unitary: preserves Σ|C|² and every
/// total-order subspace.
ModeSpectrum rotate_spectrum(const ModeSpectrum& s, double theta, double phi, double angle);

/// exp(-i*angle*N): multiplies C_{nx,ny} by e^{-i*angle*(nx+ny)/2}.
ModeSpectrum gouy_advance(const ModeSpectrum& s, double angle);

}  // namespace modespec
