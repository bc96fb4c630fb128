#pragma once

#include <compare>
#include <complex>
#include <map>
#include <vector>

#include "modespec/field.hpp"

namespace modespec {

/// Hermite-Gaussian index pair. Ordering is lexicographic by
/// (total order, nx); this is the canonical order used everywhere data
/// is enumerated or serialized.
struct ModeIndex {
    int nx = 0;
    int ny = 0;

    int order() const { return nx + ny; }

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
    friend std::strong_ordering operator<=>(const ModeIndex& a, const ModeIndex& b) {
        if (auto c = a.order() <=> b.order(); c != 0) return c;
        return a.nx <=> b.nx;
    }
};

/// All mode indices with total order <= max_order, canonical order.
std::vector<ModeIndex> modes_up_to(int max_order);

/// Complex mode coefficients C_{nx,ny} in a fixed physical frame.
struct ModeSpectrum {
    PhysicalFrame frame;
    std::map<ModeIndex, std::complex<double>> entries;

    int max_order() const;
    /// Σ|C|².
    double total_weight() const;
    bool is_normalized(double tol = 1e-6) const;
    void normalize();
};

/// Nonnegative mode weights P_{nx,ny}. Small negative inputs (quadrature
/// noise) are clamped to zero and the removed mass recorded.
struct WeightSpectrum {
    std::map<ModeIndex, double> entries;
    double clamped_mass = 0.0;

    double total() const;
    double at(ModeIndex m) const;

    /// Clamps values in [-tol, 0) to zero, accumulating clamped_mass.
    /// Values below -tol are clamped too but reported via the return
    /// value so callers can flag or reject them.
    bool insert_clamped(ModeIndex m, double value, double tol = 1e-6);
};

WeightSpectrum weights_of(const ModeSpectrum& s);

/// Throws GridError when the grid cannot resolve modes of the given order
/// (sampling rule: w0/dx >= 1.746*sqrt(2*order+1), anchored at 8 samples
/// per w0 for order 10; window rule: half_window >= sqrt(order+0.5)+2.5).
void check_mode_resolution(const GridSpec& grid, const PhysicalFrame& frame, int max_order);

/// Normalized Hermite-Gaussian mode u_{nx,ny} at the waist plane,
/// envelope exp(-(x²+y²)/w0²).
ComplexField eval_hg(ModeIndex index, const PhysicalFrame& frame, const GridSpec& grid);

/// Normalized Laguerre-Gaussian mode, azimuthal factor e^{+ilφ}.
/// (The rotation generator's eigenvalue is l/2: half the orbital index.)
ComplexField eval_lg(int p, int l, const PhysicalFrame& frame, const GridSpec& grid);

struct DecompositionResult {
    ModeSpectrum spectrum;
    /// ‖ψ − Σ C u‖ under the grid quadrature.
    double residual = 0.0;
};

/// Overlap-integral decomposition onto all modes with order <= max_order.
/// This grid quadrature is the reference ("oracle") decomposition that all
/// scan-based reconstructions are compared against.
DecompositionResult decompose(const ComplexField& field, int max_order);

/// ψ = Σ C_{nx,ny} u_{nx,ny} on the given grid.
ComplexField synthesize(const ModeSpectrum& spectrum, const GridSpec& grid);

namespace detail {
/// Rows 0..n_max of the orthonormal 1D mode functions evaluated on the
/// axis coordinates (stable normalized recurrence; no overflow at high n).
Eigen::MatrixXd hermite_stack(int n_max, const Eigen::VectorXd& coords, double w0);
}  // namespace detail

}  // namespace modespec
