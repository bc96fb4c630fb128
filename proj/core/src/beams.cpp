#include "modespec/beams.hpp"

#include <cmath>
#include <fstream>

#include "modespec/errors.hpp"
#include "modespec/io.hpp"

namespace modespec {

namespace {

ComplexField realize_astigmatic(const AstigmaticGaussian& r, const PhysicalFrame& frame,
                                const GridSpec& grid) {
    if (!(r.wx > 0.0) || !(r.wy > 0.0))
        throw InvalidArgument("astigmatic gaussian: widths must be positive");
    const double wx = r.wx * frame.w0, wy = r.wy * frame.w0;
    const double c = std::cos(r.tilt), s = std::sin(r.tilt);
    ComplexField f = make_field(grid, frame);
    for (int j = 0; j < grid.samples_y; ++j) {
        const double y = f.y(j);
        for (int i = 0; i < grid.samples_x; ++i) {
            const double x = f.x(i);
            const double xp = x * c + y * s;
            const double yp = -x * s + y * c;
            f.amp(i, j) = std::exp(-xp * xp / (wx * wx) - yp * yp / (wy * wy));
        }
    }
    return f;
}

ComplexField realize_necklace(const Necklace& r, const PhysicalFrame& frame,
                              const GridSpec& grid) {
    if (r.poles < 2 || r.poles % 2 != 0)
        throw InvalidArgument("necklace: poles must be even and >= 2");
    if (!(r.radius > 0.0) || !(r.lobe_width > 0.0))
        throw InvalidArgument("necklace: radius and lobe width must be positive");
    const double r0 = r.radius * frame.w0, sig = r.lobe_width * frame.w0;
    ComplexField f = make_field(grid, frame);
    for (int j = 0; j < grid.samples_y; ++j) {
        const double y = f.y(j);
        for (int i = 0; i < grid.samples_x; ++i) {
            const double x = f.x(i);
            const double rad = std::hypot(x, y);
            const double ang = std::atan2(y, x);
            const double d = (rad - r0) / sig;
            f.amp(i, j) = std::exp(-d * d) * std::cos(0.5 * r.poles * ang);
        }
    }
    return f;
}

ComplexField realize_multiring(const Multiring& r, const PhysicalFrame& frame,
                               const GridSpec& grid) {
    if (r.radii.empty() || r.radii.size() != r.amplitudes.size())
        throw InvalidArgument("multiring: need matching radii and amplitudes");
    for (double rad : r.radii)
        if (!(rad > 0.0)) throw InvalidArgument("multiring: radii must be positive");
    if (!(r.ring_width > 0.0))
        throw InvalidArgument("multiring: ring width must be positive");
    const double ax = 1.0 + r.ellipticity;
    const double sig = r.ring_width * frame.w0;
    ComplexField f = make_field(grid, frame);
    for (int j = 0; j < grid.samples_y; ++j) {
        const double y = f.y(j);
        for (int i = 0; i < grid.samples_x; ++i) {
            const double x = f.x(i);
            const double re = std::hypot(x * ax, y / ax);
            double v = 0.0;
            for (size_t k = 0; k < r.radii.size(); ++k) {
                const double d = (re - r.radii[k] * frame.w0) / sig;
                v += r.amplitudes[k] * std::exp(-d * d);
            }
            f.amp(i, j) = v;
        }
    }
    return f;
}

}  // namespace

ComplexField realize(const BeamRecipe& recipe, const PhysicalFrame& frame,
                     const GridSpec& grid) {
    ComplexField f = std::visit(
        [&](const auto& r) -> ComplexField {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, AstigmaticGaussian>)
                return realize_astigmatic(r, frame, grid);
            else if constexpr (std::is_same_v<T, Necklace>)
                return realize_necklace(r, frame, grid);
            else if constexpr (std::is_same_v<T, Multiring>)
                return realize_multiring(r, frame, grid);
            else if constexpr (std::is_same_v<T, CoefficientList>) {
                ModeSpectrum s = r.spectrum;
                s.frame = frame;  // coefficients are frame-agnostic numbers
                return synthesize(s, grid);
            } else {
                static_assert(std::is_same_v<T, SampledField>);
                if (io::is_field_container(r.path)) return io::read_field(r.path);
                return io::read_field_csv(r.path, frame);
            }
        },
        recipe);
    if (!(f.norm() > 0.0) || !std::isfinite(f.norm()))
        throw InvalidArgument("beam realization produced a null or non-finite field");
    f.normalize();
    return f;
}

BeamRecipe load_beam(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    if (!fs::exists(path)) throw ParseError("no such file: " + path.string());
    if (io::is_field_container(path)) return SampledField{path};

    std::ifstream in(path);
    std::string first_line;
    std::getline(in, first_line);
    while (!first_line.empty() && (first_line.back() == '\r' || first_line.back() == ' '))
        first_line.pop_back();

    if (first_line == "nx,ny,re,im") {
        CoefficientList cl;
        cl.spectrum = io::read_spectrum_csv(path, PhysicalFrame{});
        return cl;
    }
    if (first_line == "x,y,re,im") return SampledField{path};
    if (first_line.find('=') != std::string::npos) return io::read_recipe(path);

    throw ParseError(path.string() +
                     ": unrecognized beam format; expected a field container "
                     "(magic MSPC), a coefficient CSV (nx,ny,re,im), a sampled "
                     "CSV (x,y,re,im), or a key=value recipe");
}

}  // namespace modespec
