#include "modespec/spatial.hpp"

#include <cmath>

namespace modespec {

ComplexField apply_parity(const ComplexField& field) {
    ComplexField out = field;
    out.amp = field.amp.reverse();
    return out;
}

namespace {

// 6-point Lagrange weights for integer nodes -2..3 at fractional position t.
inline void quintic_weights(double t, double w[6]) {
    static constexpr double nodes[6] = {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
    for (int k = 0; k < 6; ++k) {
        double num = 1.0, den = 1.0;
        for (int m = 0; m < 6; ++m) {
            if (m == k) continue;
            num *= t - nodes[m];
            den *= nodes[k] - nodes[m];
        }
        w[k] = num / den;
    }
}

}  // namespace

ComplexField apply_rotation(const ComplexField& field, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    const int nx = field.grid.samples_x, ny = field.grid.samples_y;
    const double dx = field.grid.spacing_x(field.frame);
    const double dy = field.grid.spacing_y(field.frame);
    const double x0 = field.x(0), y0 = field.y(0);

    ComplexField out = make_field(field.grid, field.frame);
    for (int iy = 0; iy < ny; ++iy) {
        const double y = field.y(iy);
        for (int ix = 0; ix < nx; ++ix) {
            const double x = field.x(ix);
            // sample the source at the back-rotated position
            const double sx = x * c + y * s;
            const double sy = -x * s + y * c;
            const double fx = (sx - x0) / dx;
            const double fy = (sy - y0) / dy;
            const int i0 = static_cast<int>(std::floor(fx));
            const int j0 = static_cast<int>(std::floor(fy));
            if (i0 < 2 || i0 > nx - 4 || j0 < 2 || j0 > ny - 4) continue;
            double wx[6], wy[6];
            quintic_weights(fx - i0, wx);
            quintic_weights(fy - j0, wy);
            std::complex<double> v = 0.0;
            for (int b = 0; b < 6; ++b) {
                std::complex<double> row = 0.0;
                for (int a = 0; a < 6; ++a)
                    row += wx[a] * field.amp(i0 + a - 2, j0 + b - 2);
                v += wy[b] * row;
            }
            out.amp(ix, iy) = v;
        }
    }
    return out;
}

}  // namespace modespec
