#pragma once

#include <filesystem>
#include <variant>
#include <vector>

#include "modespec/modes.hpp"

namespace modespec {

/// Elliptical Gaussian exp(-x'²/wx² - y'²/wy²) in coordinates tilted by
/// `tilt`. Widths in the same unit as w0.
struct AstigmaticGaussian {
    double wx = 1.6;
    double wy = 0.7;
    double tilt = 0.0;
};

/// Ring Gaussian exp(-(r-radius)²/lobe_width²) modulated by cos(poles·φ/2);
/// poles must be even so the field is single valued.
struct Necklace {
    int poles = 6;
    double radius = 1.3;
    double lobe_width = 0.6;
};

/// Sum of concentric elliptical ring Gaussians. The elliptical radius is
/// hypot(x(1+ellipticity), y/(1+ellipticity)).
struct Multiring {
    std::vector<double> radii{0.6, 1.2};
    std::vector<double> amplitudes{1.0, 0.7};
    double ellipticity = 0.05;
    double ring_width = 0.65;
};

struct CoefficientList {
    ModeSpectrum spectrum;
};

struct SampledField {
    std::filesystem::path path;
};

using BeamRecipe = std::variant<AstigmaticGaussian, Necklace, Multiring,
                                CoefficientList, SampledField>;

/// Builds the beam on the grid, normalized to unit power.
/// Lengths in parametric recipes are interpreted in units of w0.
ComplexField realize(const BeamRecipe& recipe, const PhysicalFrame& frame,
                     const GridSpec& grid);

/// Loads a beam description, auto-detecting the format: field container
/// (magic bytes), coefficient CSV (nx,ny,re,im), sampled CSV (x,y,re,im),
/// or key=value recipe text.
BeamRecipe load_beam(const std::filesystem::path& path);

}  // namespace modespec
