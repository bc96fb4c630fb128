#include "modespec/optical_train.hpp"

#include <cmath>

#include "modespec/errors.hpp"

namespace modespec {

double OpticalElement::focal_length() const {
    if (kind != Kind::SphericalLens && kind != Kind::CylindricalLens)
        throw InvalidArgument("focal_length: element is not a lens");
    if (flat) return std::numeric_limits<double>::infinity();
    return radius / (refractive_index - 1.0);
}

OpticalElement OpticalElement::spherical(double radius, double refractive_index) {
    if (radius == 0.0) throw InvalidArgument("lens radius must be nonzero");
    if (refractive_index == 1.0) throw InvalidArgument("refractive index 1.0 gives no power");
    OpticalElement e;
    e.kind = Kind::SphericalLens;
    e.radius = radius;
    e.refractive_index = refractive_index;
    return e;
}

OpticalElement OpticalElement::spherical_flat(double refractive_index) {
    OpticalElement e;
    e.kind = Kind::SphericalLens;
    e.flat = true;
    e.refractive_index = refractive_index;
    return e;
}

OpticalElement OpticalElement::cylindrical(double radius, double axis_angle,
                                           double refractive_index) {
    if (radius == 0.0) throw InvalidArgument("lens radius must be nonzero");
    if (refractive_index == 1.0) throw InvalidArgument("refractive index 1.0 gives no power");
    OpticalElement e;
    e.kind = Kind::CylindricalLens;
    e.radius = radius;
    e.axis_angle = axis_angle;
    e.refractive_index = refractive_index;
    return e;
}

OpticalElement OpticalElement::free_space(double distance) {
    if (distance < 0.0) throw InvalidArgument("free-space distance must be nonnegative");
    OpticalElement e;
    e.kind = Kind::FreeSpace;
    e.distance = distance;
    return e;
}

OpticalElement OpticalElement::parity() {
    OpticalElement e;
    e.kind = Kind::Parity;
    return e;
}

std::string to_string(OpticalElement::Kind k) {
    switch (k) {
        case OpticalElement::Kind::SphericalLens: return "spherical";
        case OpticalElement::Kind::CylindricalLens: return "cylindrical";
        case OpticalElement::Kind::FreeSpace: return "free";
        case OpticalElement::Kind::Parity: return "parity";
    }
    return "?";
}

double OpticalTrain::total_length() const {
    double d = 0.0;
    for (const auto& e : elements)
        if (e.kind == OpticalElement::Kind::FreeSpace) d += e.distance;
    return d;
}

RayMatrix element_matrix(const OpticalElement& e) {
    RayMatrix m = RayMatrix::Identity();
    switch (e.kind) {
        case OpticalElement::Kind::FreeSpace:
            m(0, 2) = e.distance;
            m(1, 3) = e.distance;
            break;
        case OpticalElement::Kind::SphericalLens: {
            if (e.flat) break;
            const double p = 1.0 / e.focal_length();
            m(2, 0) = -p;
            m(3, 1) = -p;
            break;
        }
        case OpticalElement::Kind::CylindricalLens: {
            if (e.flat) break;
            const double p = 1.0 / e.focal_length();
            const double c = std::cos(e.axis_angle);
            const double s = std::sin(e.axis_angle);
            // power projected onto the power axis; a lens axis is a line,
            // so alpha and alpha+pi give the same matrix
            m(2, 0) = -p * c * c;
            m(2, 1) = -p * s * c;
            m(3, 0) = -p * s * c;
            m(3, 1) = -p * s * s;
            break;
        }
        case OpticalElement::Kind::Parity:
            m = -RayMatrix::Identity();
            break;
    }
    return m;
}

RayMatrix compose(const OpticalTrain& train) {
    if (train.elements.empty()) throw InvalidArgument("cannot compose an empty train");
    RayMatrix m = RayMatrix::Identity();
    for (const auto& e : train.elements) m = element_matrix(e) * m;
    return m;
}

}  // namespace modespec
