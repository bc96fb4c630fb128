#pragma once

#include "modespec/interferometer.hpp"
#include "modespec/modes.hpp"

namespace modespec {

struct ReconstructionReport {
    WeightSpectrum weights;
    /// RMS mismatch between the input scan(s) and the closed-form scan of
    /// the reconstructed weights.
    double residual = 0.0;
    /// Negative-weight mass removed by clamping.
    double clamped_mass = 0.0;
    /// True when the requested max_order is within the exact band for the
    /// scan's sample counts.
    bool sampling_ok = true;
    /// Largest magnitude of the sine-projection diagnostic, which vanishes
    /// for a symmetric, properly compensated scan pair.
    double sine_residual = 0.0;
    int k_plus = 0;
    int k_minus = 0;
    int max_order = 0;
};

/// Full-range double Fourier inversion: requires a scan covering [0, 4π)
/// per axis. Weights from
///   P = c ΣΣ ΔI · cos[(nx+ny)Δφ₊/2 + (nx-ny)Δφ₋/2] · h²
/// with c = (32π²)⁻¹ for (0,0) and (16π²)⁻¹ otherwise (constants matched
/// to ΔI = 2Re⟨·,·⟩).
ReconstructionReport reconstruct_full(const IntensityScan& scan, int max_order);

/// Two-compensator inversion over the accessible window [π, 3π)²:
///   P = c ΣΣ [(-1)^{nx+ny} ΔI_b + ΔI_a] · cos[((nx+ny)φ₊ + (nx-ny)φ₋)/2] · h²
/// with scan_a taken at the identity setting, scan_b at the image-inversion
/// setting, c = (16π²)⁻¹ for (0,0) and (8π²)⁻¹ otherwise.
ReconstructionReport reconstruct_hg(const IntensityScan& scan_a,
                                    const IntensityScan& scan_b, int max_order);

/// Largest total order N such that every spectrum with max_order <= N is
/// reconstructed exactly by reconstruct_hg at K samples per axis. Frozen
/// from the exhaustive aliasing search (the first collision is always the
/// mirror pair (K,0)/(0,K), giving N = K-1).
int sampling_bound(int k);

}  // namespace modespec
