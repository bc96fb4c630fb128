#include "modespec/train_propagation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fft_engine.hpp"
#include "modespec/errors.hpp"

namespace modespec {

namespace {

void free_space_step(ComplexField& f, double distance) {
    if (distance == 0.0) return;
    const int nx = f.grid.samples_x, ny = f.grid.samples_y;
    const double dx = f.grid.spacing_x(f.frame), dy = f.grid.spacing_y(f.frame);
    const double lam = f.frame.lambdabar;

    Eigen::VectorXd kx2(nx), ky2(ny);
    for (int i = 0; i < nx; ++i) {
        const double k = 2.0 * std::numbers::pi * (i <= nx / 2 ? i : i - nx) / (nx * dx);
        kx2[i] = k * k;
    }
    for (int j = 0; j < ny; ++j) {
        const double k = 2.0 * std::numbers::pi * (j <= ny / 2 ? j : j - ny) / (ny * dy);
        ky2[j] = k * k;
    }

    detail::fft2_inplace(f.amp, true);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            f.amp(i, j) *= std::polar(1.0, -0.5 * distance * lam * (kx2[i] + ky2[j]));
    detail::fft2_inplace(f.amp, false);
    f.amp /= static_cast<double>(nx) * ny;
}

void lens_step(ComplexField& f, const OpticalElement& e) {
    if (e.flat) return;
    const double inv2lf = 1.0 / (2.0 * f.frame.lambdabar * e.focal_length());
    const int nx = f.grid.samples_x, ny = f.grid.samples_y;
    if (e.kind == OpticalElement::Kind::SphericalLens) {
        for (int j = 0; j < ny; ++j) {
            const double y = f.y(j) - e.offset_y;
            for (int i = 0; i < nx; ++i) {
                const double x = f.x(i) - e.offset_x;
                f.amp(i, j) *= std::polar(1.0, -(x * x + y * y) * inv2lf);
            }
        }
    } else {
        const double c = std::cos(e.axis_angle), s = std::sin(e.axis_angle);
        for (int j = 0; j < ny; ++j) {
            const double y = f.y(j) - e.offset_y;
            for (int i = 0; i < nx; ++i) {
                const double x = f.x(i) - e.offset_x;
                const double u = x * c + y * s;
                f.amp(i, j) *= std::polar(1.0, -u * u * inv2lf);
            }
        }
    }
}

// Intensity caught in the outer border signals wrap-around contamination.
void check_border(const ComplexField& f, size_t step) {
    const int nx = f.grid.samples_x, ny = f.grid.samples_y;
    const int bx = std::max(1, nx / 20), by = std::max(1, ny / 20);
    const double total = f.amp.squaredNorm();
    if (total == 0.0) return;
    double border = 0.0;
    border += f.amp.topRows(bx).squaredNorm();
    border += f.amp.bottomRows(bx).squaredNorm();
    border += f.amp.block(bx, 0, nx - 2 * bx, by).squaredNorm();
    border += f.amp.block(bx, ny - by, nx - 2 * bx, by).squaredNorm();
    if (border > 1e-8 * total) {
        std::ostringstream msg;
        msg << "train propagation: " << border / total
            << " of the power reached the window border after step " << step
            << "; enlarge the grid window";
        throw GridError(msg.str());
    }
}

}  // namespace

ComplexField apply_train(const ComplexField& field, const OpticalTrain& train) {
    ComplexField out = field;
    check_border(out, 0);
    size_t step = 0;
    for (const auto& e : train.elements) {
        ++step;
        switch (e.kind) {
            case OpticalElement::Kind::FreeSpace:
                free_space_step(out, e.distance);
                break;
            case OpticalElement::Kind::SphericalLens:
            case OpticalElement::Kind::CylindricalLens:
                lens_step(out, e);
                break;
            case OpticalElement::Kind::Parity:
                out.amp = out.amp.reverse().eval();
                break;
        }
        check_border(out, step);
    }
    return out;
}

}  // namespace modespec
