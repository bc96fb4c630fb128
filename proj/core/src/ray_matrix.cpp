#include "modespec/ray_matrix.hpp"

#include <cmath>

namespace modespec {

RayMatrix s_plus(double phi_plus, const PhysicalFrame& frame) {
    const double z0 = frame.rayleigh_range();
    const double c = std::cos(0.5 * phi_plus);
    const double s = std::sin(0.5 * phi_plus);
    RayMatrix m;
    m << c, 0, z0 * s, 0,
         0, c, 0, z0 * s,
         -s / z0, 0, c, 0,
         0, -s / z0, 0, c;
    return m;
}

RayMatrix s_minus(double phi_minus, const PhysicalFrame& frame) {
    const double z0 = frame.rayleigh_range();
    const double c = std::cos(0.5 * phi_minus);
    const double s = std::sin(0.5 * phi_minus);
    RayMatrix m;
    m << c, 0, z0 * s, 0,
         0, c, 0, -z0 * s,
         -s / z0, 0, c, 0,
         0, s / z0, 0, c;
    return m;
}

double symplectic_defect(const RayMatrix& m) {
    RayMatrix j = RayMatrix::Zero();
    j(0, 2) = 1.0;
    j(1, 3) = 1.0;
    j(2, 0) = -1.0;
    j(3, 1) = -1.0;
    return (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
}

}  // namespace modespec
