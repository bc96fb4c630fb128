#include <doctest.h>

#include "modespec/beams.hpp"
#include "modespec/interferometer.hpp"
#include "modespec/spatial.hpp"
#include "test_helpers.hpp"

using namespace modespec;
using namespace modespec::testing;

namespace {
constexpr double kPi = std::numbers::pi;

ScanConfig window_cfg(int k, CompensatorSetting comp) {
    ScanConfig cfg;
    cfg.k_plus = k;
    cfg.k_minus = k;
    cfg.compensator = comp;
    return cfg;
}
}  // namespace

TEST_SUITE("interferometer") {

TEST_CASE("balanced-detector observable at the three marked points") {
    const ComplexField u00 = eval_hg({0, 0}, default_frame(), fast_grid());
    const ComplexField u10 = eval_hg({1, 0}, default_frame(), fast_grid());
    const ComplexField u01 = eval_hg({0, 1}, default_frame(), fast_grid());
    CHECK(delta_i(u00, u00) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(std::abs(delta_i(u10, u01)) < 1e-10);
    ComplexField neg = u00;
    neg.amp = -neg.amp;
    CHECK(delta_i(u00, neg) == doctest::Approx(-2.0).epsilon(1e-8));
}

TEST_CASE("closed-form scans of pure modes") {
    ModeSpectrum ground;
    ground.frame = default_frame();
    ground.entries[{0, 0}] = 1.0;
    const IntensityScan s0 = scan_analytic(ground, window_cfg(6, CompensatorSetting::identity()));
    CHECK((s0.values.array() - 2.0).abs().maxCoeff() < 1e-14);

    ModeSpectrum first;
    first.frame = default_frame();
    first.entries[{1, 0}] = 1.0;
    const IntensityScan s1 = scan_analytic(first, window_cfg(7, CompensatorSetting::identity()));
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            CHECK(s1.values(i, j) ==
                  doctest::Approx(2.0 * std::cos(0.5 * (s1.phi_plus[i] + s1.phi_minus[j])))
                      .epsilon(1e-14));
}

TEST_CASE("closed form at the worked example point") {
    // equal mix of (0,0) and (2,0) at phi=(2pi,2pi): 2*[1/2 + 1/2*cos(2pi)] = 2
    WeightSpectrum w;
    w.entries[{0, 0}] = 0.5;
    w.entries[{2, 0}] = 0.5;
    ScanConfig cfg = window_cfg(2, CompensatorSetting::identity());
    const IntensityScan s = scan_analytic(w, cfg);
    CHECK(s.phi_plus[1] == doctest::Approx(2.0 * kPi));
    CHECK(s.values(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("kernel engine agrees with the closed form") {
    const ComplexField u00 = eval_hg({0, 0}, default_frame(), fast_grid());
    const IntensityScan flat = scan_kernel(u00, window_cfg(4, CompensatorSetting::identity()));
    CHECK((flat.values.array() - 2.0).abs().maxCoeff() < 1e-6);

    const ComplexField u10 = eval_hg({1, 0}, default_frame(), fast_grid());
    const IntensityScan k10 = scan_kernel(u10, window_cfg(10, CompensatorSetting::identity()));
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            CHECK(std::abs(k10.values(i, j) -
                           2.0 * std::cos(0.5 * (k10.phi_plus[i] + k10.phi_minus[j]))) < 1e-4);

    const ComplexField beam = realize(AstigmaticGaussian{}, default_frame(), fast_grid());
    const ModeSpectrum spec = decompose(beam, 14).spectrum;
    for (const auto comp :
         {CompensatorSetting::identity(), CompensatorSetting::minus_identity()}) {
        const IntensityScan kk = scan_kernel(beam, window_cfg(5, comp));
        const IntensityScan aa = scan_analytic(weights_of(spec), window_cfg(5, comp));
        CHECK((kk.values - aa.values).cwiseAbs().maxCoeff() < 1e-4);
    }
}

TEST_CASE("image-inversion compensator equals identity on even modes") {
    const ComplexField u20 = eval_hg({2, 0}, default_frame(), fast_grid());
    const IntensityScan a = scan_kernel(u20, window_cfg(4, CompensatorSetting::identity()));
    const IntensityScan b = scan_kernel(u20, window_cfg(4, CompensatorSetting::minus_identity()));
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("scans are periodic and carry the two half-period shift symmetries") {
    const ModeSpectrum s = random_spectrum(5, 77);
    ScanConfig cfg;
    cfg.k_plus = 8;
    cfg.k_minus = 8;
    cfg.phi_plus_start = 0.0;
    cfg.phi_plus_range = 4.0 * kPi;
    cfg.phi_minus_start = 0.0;
    cfg.phi_minus_range = 4.0 * kPi;
    const IntensityScan scan = scan_analytic(s, cfg);
    const int half = 4;  // +2pi in grid steps
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const double v = scan.values(i, j);
            CHECK(scan.values((i + half) % 8, (j + half) % 8) == doctest::Approx(v).epsilon(1e-12));
            CHECK(scan.values((i + half) % 8, (j - half + 8) % 8) ==
                  doctest::Approx(v).epsilon(1e-12));
        }

    // full-period translation invariance
    ScanConfig shifted = cfg;
    shifted.phi_plus_start = 4.0 * kPi;
    const IntensityScan scan2 = scan_analytic(s, shifted);
    CHECK((scan.values - scan2.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scans depend only on the offset from the compensator angles") {
    const ModeSpectrum s = random_spectrum(4, 78);
    ScanConfig base = window_cfg(6, CompensatorSetting::identity());
    const IntensityScan ref = scan_analytic(s, base);

    ScanConfig moved = window_cfg(6, CompensatorSetting::custom(0.7, -0.4));
    moved.phi_plus_start = base.phi_plus_start + 0.7;
    moved.phi_minus_start = base.phi_minus_start - 0.4;
    const IntensityScan got = scan_analytic(s, moved);
    CHECK((ref.values - got.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lens-train engine reproduces the kernel engine") {
    const ComplexField beam = realize(AstigmaticGaussian{}, default_frame(), fast_grid());
    for (const auto comp :
         {CompensatorSetting::identity(), CompensatorSetting::minus_identity()}) {
        const IntensityScan kk = scan_kernel(beam, window_cfg(4, comp));
        const IntensityScan tt = scan_train(beam, window_cfg(4, comp));
        CHECK((kk.values - tt.values).cwiseAbs().maxCoeff() < 1e-3);
    }
}

TEST_CASE("train engine refuses angles outside the hardware window") {
    const ComplexField u00 = eval_hg({0, 0}, default_frame(), fast_grid());
    ScanConfig cfg = window_cfg(4, CompensatorSetting::identity());
    cfg.phi_plus_start = 0.0;  // below pi
    CHECK_THROWS_AS(scan_train(u00, cfg), RangeError);
}

TEST_CASE("scan inputs must be normalized and bounded") {
    ComplexField big = eval_hg({0, 0}, default_frame(), fast_grid());
    big.amp *= 2.0;
    CHECK_THROWS_AS(scan_kernel(big, window_cfg(2, CompensatorSetting::identity())),
                    InvalidArgument);

    // |delta I| <= 2 for normalized inputs, every engine
    const ComplexField f = random_band_limited_field(5, 79, fast_grid());
    const IntensityScan s = scan_kernel(f, window_cfg(5, CompensatorSetting::identity()));
    CHECK(s.values.cwiseAbs().maxCoeff() <= 2.0 + 1e-9);
}

}  // TEST_SUITE
