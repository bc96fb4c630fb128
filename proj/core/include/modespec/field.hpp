#pragma once

#include <Eigen/Dense>
#include <complex>

#include "modespec/frame.hpp"

namespace modespec {

/// Sampled complex amplitude ψ(x, y). amp(ix, iy) holds the sample at
/// grid point (x(ix), y(iy)); storage is column-major, so x varies fastest.
/// Amplitude carries dimension 1/length: ∫|ψ|² dx dy is dimensionless.
struct ComplexField {
    GridSpec grid;
    PhysicalFrame frame;
    Eigen::MatrixXcd amp;

    double x(int ix) const { return grid.x(ix, frame); }
    double y(int iy) const { return grid.y(iy, frame); }
    double cell_area() const { return grid.cell_area(frame); }

    /// Grid quadrature of ∫|ψ|².
    double power() const { return amp.squaredNorm() * cell_area(); }
    double norm() const { return std::sqrt(power()); }

    /// ⟨this, other⟩ = ∫ conj(this) · other.
    std::complex<double> inner(const ComplexField& other) const;

    void check_same_layout(const ComplexField& other) const;

    /// Scales to unit power; throws InvalidArgument on a null field.
    void normalize();
};

ComplexField make_field(const GridSpec& grid, const PhysicalFrame& frame);

}  // namespace modespec
