#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "modespec/beams.hpp"
#include "modespec/errors.hpp"
#include "modespec/io.hpp"
#include "modespec/spatial.hpp"
#include "test_helpers.hpp"

using namespace modespec;
using namespace modespec::testing;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "modespec_beam_tests";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("beams") {

TEST_CASE("isotropic limit of the elliptical gaussian is the ground mode") {
    const ComplexField f =
        realize(AstigmaticGaussian{1.0, 1.0, 0.0}, default_frame(), fast_grid());
    const ComplexField u = eval_hg({0, 0}, default_frame(), fast_grid());
    CHECK((f.amp - u.amp).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("all stock beams come out normalized") {
    for (const BeamRecipe& r :
         {BeamRecipe{AstigmaticGaussian{}}, BeamRecipe{Necklace{}}, BeamRecipe{Multiring{}}}) {
        const ComplexField f = realize(r, default_frame(), fast_grid());
        CHECK(std::abs(f.power() - 1.0) < 1e-8);
    }
}

TEST_CASE("untilted elliptical gaussian contains only even modes") {
    const ComplexField f = realize(AstigmaticGaussian{1.6, 0.7, 0.0}, default_frame(),
                                   default_grid());
    const ModeSpectrum s = decompose(f, 10).spectrum;
    for (const auto& [m, c] : s.entries)
        if (m.nx % 2 == 1 || m.ny % 2 == 1) CHECK(std::abs(c) < 1e-8);
    CHECK(std::norm(s.entries.at({0, 0})) > 0.5);
}

TEST_CASE("necklace weights are invariant under its pole rotation") {
    const Necklace neck{6, 1.3, 0.6};
    const ComplexField f = realize(neck, default_frame(), default_grid());
    const ComplexField rotated = apply_rotation(f, 2.0 * std::numbers::pi / 6.0);
    const auto w0 = weights_of(decompose(f, 12).spectrum);
    const auto w1 = weights_of(decompose(rotated, 12).spectrum);
    CHECK(max_weight_diff(w0, w1, 12) < 1e-6);
}

TEST_CASE("coefficient recipes synthesize and decompose back") {
    CoefficientList cl;
    cl.spectrum = random_spectrum(6, 777);
    const ComplexField f = realize(cl, default_frame(), default_grid());
    const ModeSpectrum back = decompose(f, 6).spectrum;
    for (const auto& [m, c] : cl.spectrum.entries)
        CHECK(std::abs(back.entries.at(m) - c) < 1e-8);
}

TEST_CASE("field container round trip is bitwise") {
    const fs::path p = temp_dir() / "beam.mspc";
    const ComplexField f = random_band_limited_field(5, 88, fast_grid());
    io::write_field(p, f);
    const ComplexField g = io::read_field(p);
    CHECK(g.grid == f.grid);
    CHECK(g.frame.w0 == f.frame.w0);
    CHECK(g.frame.lambdabar == f.frame.lambdabar);
    REQUIRE(g.amp.size() == f.amp.size());
    CHECK(std::memcmp(g.amp.data(), f.amp.data(),
                      sizeof(std::complex<double>) * f.amp.size()) == 0);

    const BeamRecipe r = load_beam(p);
    CHECK(std::holds_alternative<SampledField>(r));
    const ComplexField realized = realize(r, f.frame, f.grid);
    CHECK(std::abs(realized.power() - 1.0) < 1e-12);
}

TEST_CASE("beam loader auto-detects the text formats") {
    const fs::path dir = temp_dir();

    {
        std::ofstream spec(dir / "spec.csv");
        spec << "nx,ny,re,im\n0,0,1,0\n";
    }
    const BeamRecipe r1 = load_beam(dir / "spec.csv");
    REQUIRE(std::holds_alternative<CoefficientList>(r1));
    CHECK(std::get<CoefficientList>(r1).spectrum.entries.at({0, 0}) ==
          std::complex<double>(1.0, 0.0));

    {
        std::ofstream rec(dir / "beam.recipe");
        rec << "type=necklace\npoles=6\nr0=2.0\nlobe_width=0.5\n";
    }
    const BeamRecipe r2 = load_beam(dir / "beam.recipe");
    REQUIRE(std::holds_alternative<Necklace>(r2));
    CHECK(std::get<Necklace>(r2).poles == 6);
    CHECK(std::get<Necklace>(r2).radius == 2.0);

    {
        std::ofstream junk(dir / "junk.bin", std::ios::binary);
        junk << "XYZW garbage";
    }
    CHECK_THROWS_WITH_AS(load_beam(dir / "junk.bin"), doctest::Contains("expected"),
                         ParseError);
}

TEST_CASE("degenerate parameters are rejected") {
    CHECK_THROWS_AS(realize(Necklace{5, 1.0, 0.5}, default_frame(), fast_grid()),
                    InvalidArgument);
    CHECK_THROWS_AS(realize(AstigmaticGaussian{-1.0, 1.0, 0.0}, default_frame(), fast_grid()),
                    InvalidArgument);
    CHECK_THROWS_AS(realize(Multiring{{1.0}, {1.0, 0.5}, 0.1, 0.5}, default_frame(),
                            fast_grid()),
                    InvalidArgument);
}

}  // TEST_SUITE
