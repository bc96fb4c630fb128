#include <doctest.h>

#include "modespec/errors.hpp"
#include "modespec/fractional.hpp"
#include "modespec/spatial.hpp"
#include "test_helpers.hpp"

using namespace modespec;
using namespace modespec::testing;

namespace {
constexpr double kPi = std::numbers::pi;

std::complex<double> eigenphase(const ComplexField& mode, const ComplexField& out) {
    return mode.inner(out);
}
}  // namespace

TEST_SUITE("fractional") {

TEST_CASE("degenerate angles collapse to exact shortcuts") {
    const ComplexField f = random_band_limited_field(4, 1, fast_grid());
    const ComplexField id = apply_s_plus(f, 0.0);
    CHECK((id.amp - f.amp).cwiseAbs().maxCoeff() == 0.0);
    const ComplexField id4pi = apply_s_plus(f, 4.0 * kPi);
    CHECK((id4pi.amp - f.amp).cwiseAbs().maxCoeff() == 0.0);

    const ComplexField par = apply_s_minus(f, 2.0 * kPi);
    CHECK((par.amp - apply_parity(f).amp).cwiseAbs().maxCoeff() == 0.0);
    const ComplexField par_p = apply_s_plus(f, 2.0 * kPi);
    CHECK((par_p.amp - apply_parity(f).amp).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigenmodes acquire the sum-index phase under the isotropic kernel") {
    for (const ModeIndex m : {ModeIndex{1, 0}, ModeIndex{2, 1}}) {
        const ComplexField u = eval_hg(m, default_frame(), fast_grid());
        for (double phi : {1.234, kPi, 2.6 * kPi, 3.7 * kPi}) {
            const ComplexField out = apply_s_plus(u, phi);
            const std::complex<double> ph = eigenphase(u, out);
            CHECK(std::abs(std::abs(ph) - 1.0) < 1e-8);  // weights unchanged
            CHECK(std::abs(ph - std::polar(1.0, -0.5 * m.order() * phi)) < 1e-6);
            // no leakage into other modes
            const auto spec = decompose(out, m.order() + 2).spectrum;
            double leak = 0.0;
            for (const auto& [k, c] : spec.entries)
                if (!(k == m)) leak += std::norm(c);
            CHECK(leak < 1e-8);
        }
    }
}

TEST_CASE("eigenmodes acquire the difference-index phase under the astigmatic kernel") {
    const ComplexField u31 = eval_hg({3, 1}, default_frame(), fast_grid());
    const ComplexField u11 = eval_hg({1, 1}, default_frame(), fast_grid());
    for (double phi : {1.234, 2.6 * kPi}) {
        CHECK(std::abs(eigenphase(u31, apply_s_minus(u31, phi)) -
                       std::polar(1.0, -1.0 * phi)) < 1e-6);
        // balanced indices: no phase at all
        CHECK(std::abs(eigenphase(u11, apply_s_minus(u11, phi)) - 1.0) < 1e-6);
    }
}

TEST_CASE("the gaussian is a fixed point of the quarter-cycle transform") {
    const ComplexField u = eval_hg({0, 0}, default_frame(), default_grid());
    const ComplexField out = apply_s_plus(u, kPi);
    CHECK(std::sqrt((out.amp - u.amp).squaredNorm() * u.cell_area()) < 1e-6);
}

TEST_CASE("semigroup additivity and unitarity on a band-limited field") {
    const ComplexField f = random_band_limited_field(6, 9, default_grid());
    const ComplexField ab = apply_s_plus(apply_s_plus(f, 1.1), 0.8);
    const ComplexField sum = apply_s_plus(f, 1.9);
    CHECK(std::sqrt((ab.amp - sum.amp).squaredNorm() * f.cell_area()) < 1e-5);

    const ComplexField mb = apply_s_minus(apply_s_minus(f, 2.6), 1.3);
    const ComplexField msum = apply_s_minus(f, 3.9);
    CHECK(std::sqrt((mb.amp - msum.amp).squaredNorm() * f.cell_area()) < 1e-5);

    for (double phi : {0.7, kPi, 1.8 * kPi, 2.7 * kPi, 3.4 * kPi}) {
        CHECK(std::abs(apply_s_plus(f, phi).norm() - 1.0) < 1e-6);
        CHECK(std::abs(apply_s_minus(f, phi).norm() - 1.0) < 1e-6);
    }
}

TEST_CASE("plans reject grids that cannot sample the chirp") {
    const GridSpec tiny{64, 64, 8.0};
    CHECK_THROWS_WITH_AS(
        (KernelPlan{KernelPlan::Kind::SPlus, 1.9 * kPi, tiny, default_frame()}),
        doctest::Contains("chirp sampling rule"), GridError);
}

TEST_CASE("plans are bound to their grid and frame") {
    const KernelPlan plan(KernelPlan::Kind::SPlus, 1.0, fast_grid(), default_frame());
    const ComplexField other = make_field(default_grid(), default_frame());
    CHECK_THROWS_AS(plan.apply(other), MismatchError);
}

}  // TEST_SUITE
