#include "modespec/field.hpp"

#include "modespec/errors.hpp"

namespace modespec {

std::complex<double> ComplexField::inner(const ComplexField& other) const {
    check_same_layout(other);
    return (amp.conjugate().cwiseProduct(other.amp)).sum() * cell_area();
}

void ComplexField::check_same_layout(const ComplexField& other) const {
    if (!(grid == other.grid))
        throw MismatchError("fields live on different grids");
    if (!frame.compatible(other.frame))
        throw MismatchError("fields live in different physical frames");
}

void ComplexField::normalize() {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw InvalidArgument("cannot normalize a null or non-finite field");
    amp /= n;
}

ComplexField make_field(const GridSpec& grid, const PhysicalFrame& frame) {
    ComplexField f;
    f.grid = grid;
    f.frame = frame;
    f.amp = Eigen::MatrixXcd::Zero(grid.samples_x, grid.samples_y);
    return f;
}

}  // namespace modespec
