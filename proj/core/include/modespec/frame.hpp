#pragma once

#include <cmath>

#include "modespec/errors.hpp"

namespace modespec {

/// Physical reference frame of the mode basis: beam waist w0 and reduced
/// wavelength ƛ = 1/k. All lengths elsewhere use the same unit as w0.
/// The Rayleigh range z0 = w0²/(2ƛ) is always derived, never stored.
struct PhysicalFrame {
    double w0 = 1.0;
    double lambdabar = 0.5;

    double rayleigh_range() const { return w0 * w0 / (2.0 * lambdabar); }

    bool compatible(const PhysicalFrame& other, double rtol = 1e-12) const {
        return std::abs(w0 - other.w0) <= rtol * w0 &&
               std::abs(lambdabar - other.lambdabar) <= rtol * lambdabar;
    }
};

inline PhysicalFrame make_frame(double w0, double lambdabar) {
    if (!(w0 > 0.0) || !(lambdabar > 0.0))
        throw InvalidArgument("frame: w0 and lambdabar must be positive");
    return PhysicalFrame{w0, lambdabar};
}

/// Uniform Cartesian sampling grid, centered on the optical axis.
/// half_window is in units of w0; sample i sits at (i - (n-1)/2) * spacing,
/// so the grid is mirror-symmetric and parity is an exact index reversal.
struct GridSpec {
    int samples_x = 512;
    int samples_y = 512;
    double half_window = 8.0;

    double spacing_x(const PhysicalFrame& f) const {
        return 2.0 * half_window * f.w0 / samples_x;
    }
    double spacing_y(const PhysicalFrame& f) const {
        return 2.0 * half_window * f.w0 / samples_y;
    }
    double x(int ix, const PhysicalFrame& f) const {
        return (ix - 0.5 * (samples_x - 1)) * spacing_x(f);
    }
    double y(int iy, const PhysicalFrame& f) const {
        return (iy - 0.5 * (samples_y - 1)) * spacing_y(f);
    }
    double cell_area(const PhysicalFrame& f) const {
        return spacing_x(f) * spacing_y(f);
    }

    bool operator==(const GridSpec&) const = default;
};

inline GridSpec make_grid(int samples_x, int samples_y, double half_window) {
    if (samples_x < 2 || samples_y < 2)
        throw InvalidArgument("grid: need at least 2 samples per axis");
    if (!(half_window > 0.0))
        throw InvalidArgument("grid: half_window must be positive");
    return GridSpec{samples_x, samples_y, half_window};
}

}  // namespace modespec
