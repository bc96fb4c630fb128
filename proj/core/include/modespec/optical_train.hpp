#pragma once

#include <string>
#include <vector>

#include "modespec/ray_matrix.hpp"

namespace modespec {

/// A thin optical element. Lenses store a radius of curvature R and a
/// refractive index ñ with focal length f = R/(ñ-1); an infinite radius is
/// encoded by the explicit `flat` marker, never by a large float.
/// Transverse offsets model misaligned elements; they do not enter the ray
/// matrix (first-order invariance) and take effect only in wave-domain
/// propagation.
struct OpticalElement {
    enum class Kind { SphericalLens, CylindricalLens, FreeSpace, Parity };

    Kind kind = Kind::FreeSpace;
    double radius = 0.0;           // lenses, same unit as w0
    bool flat = false;             // infinite-radius marker
    double refractive_index = 1.5;
    double axis_angle = 0.0;       // cylindrical power axis, radians from x
    double distance = 0.0;         // free space
    double offset_x = 0.0;
    double offset_y = 0.0;

    double focal_length() const;   // throws InvalidArgument for non-lenses

    static OpticalElement spherical(double radius, double refractive_index = 1.5);
    static OpticalElement spherical_flat(double refractive_index = 1.5);
    static OpticalElement cylindrical(double radius, double axis_angle,
                                      double refractive_index = 1.5);
    static OpticalElement free_space(double distance);
    static OpticalElement parity();
};

std::string to_string(OpticalElement::Kind k);

/// Ordered element sequence, first element hit first.
struct OpticalTrain {
    std::vector<OpticalElement> elements;

    double total_length() const;   // sum of free-space distances
};

RayMatrix element_matrix(const OpticalElement& e);

/// Ordered product of element matrices in propagation order.
RayMatrix compose(const OpticalTrain& train);

}  // namespace modespec
