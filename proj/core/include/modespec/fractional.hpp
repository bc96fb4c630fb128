#pragma once

#include <memory>

#include "modespec/field.hpp"

namespace modespec {

/// Precomputed application plan for the separable fractional-Fourier
/// kernels belonging to s_plus / s_minus.
///
/// The 2D kernel factorizes into two 1D fractional transforms; each 1D
/// transform is evaluated as chirp-multiply, scaled Fourier transform,
/// chirp-multiply. The scaled transform is computed exactly on the sample
/// grid by Bluestein's algorithm (two FFTs against a precomputed chirp),
/// so one application costs O(N² log N).
///
/// Phase convention: the raw integral kernel carries a per-axis factor
/// ζ(φ) = e^{-iφ/4} (times i when sin(φ/2) < 0) on the ground mode. Plans
/// divide it out, so the applied unitaries satisfy exactly
///    s_plus:  u_{nx,ny} -> e^{-i(nx+ny)φ/2} u_{nx,ny}
///    s_minus: u_{nx,ny} -> e^{-i(nx-ny)φ/2} u_{nx,ny}
/// and interferometric scans need no per-angle phase bookkeeping.
///
/// Angles are reduced mod 4π. Within 1e-6 of the degenerate points the
/// singular kernel is replaced by its exact limit: identity at 0, parity
/// at 2π.
///
/// Construction checks the chirp sampling rule
///    |cot(φ/2)| · X · dx / w0² < π/2   (X = half_window·w0),
/// throwing GridError with the offending ratio when violated.
///
/// Plans are immutable after construction; concurrent apply() calls on the
/// same plan are safe (per-call workspaces).
class KernelPlan {
  public:
    enum class Kind { SPlus, SMinus };

    KernelPlan(Kind kind, double angle, const GridSpec& grid, const PhysicalFrame& frame);
    ~KernelPlan();
    KernelPlan(KernelPlan&&) noexcept;
    KernelPlan& operator=(KernelPlan&&) noexcept;
    KernelPlan(const KernelPlan&) = delete;
    KernelPlan& operator=(const KernelPlan&) = delete;

    Kind kind() const;
    double angle() const;

    ComplexField apply(const ComplexField& field) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot conveniences; scans reuse explicit plans instead.
ComplexField apply_s_plus(const ComplexField& field, double phi_plus);
ComplexField apply_s_minus(const ComplexField& field, double phi_minus);

}  // namespace modespec
