#include "modespec/lens_design.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "modespec/errors.hpp"

namespace modespec {

namespace {

constexpr double kPi = std::numbers::pi;

// Designed lenses use ñ = 2 so the stored radius equals the focal length
// demanded by the scan matrices. Only the focal length enters any matrix.
constexpr double kDesignIndex = 2.0;

void check_operational(double phi, const char* which) {
    if (phi < kPi - 1e-12 || phi > 3.0 * kPi + 1e-12) {
        std::ostringstream msg;
        msg << which << ": angle " << phi << " outside the operational interval "
            << "[pi, 3pi]; angles beyond it are reached by switching the "
            << "compensating arm between the identity and image-inversion "
            << "settings instead of retuning the train";
        throw RangeError(msg.str());
    }
}

}  // namespace

OpticalTrain design_s_plus(double phi_plus, const PhysicalFrame& frame) {
    check_operational(phi_plus, "design_s_plus");
    const double z0 = frame.rayleigh_range();
    const double cot = 1.0 / std::tan(0.25 * phi_plus);
    const double r2 = z0 / (2.0 - std::sin(0.5 * phi_plus));

    OpticalElement outer;
    if (std::abs(1.0 - cot) < 1e-12)
        outer = OpticalElement::spherical_flat(kDesignIndex);
    else
        outer = OpticalElement::spherical(z0 / (1.0 - cot), kDesignIndex);

    OpticalTrain t;
    t.elements = {outer,
                  OpticalElement::free_space(z0),
                  OpticalElement::spherical(r2, kDesignIndex),
                  OpticalElement::free_space(z0),
                  outer};
    return t;
}

double solve_scissor_angle(double phi_minus) {
    check_operational(phi_minus, "design_s_minus");
    const double target = 1.0 / std::tan(0.25 * phi_minus);
    auto g = [target](double om) { return target + 2.0 * std::sin(0.5 * om); };

    // Root sits exactly on the bracket ends at phi = pi and 3pi; pad so a
    // sign change survives floating point.
    double lo = -kPi / 3.0 - 1e-9, hi = kPi / 3.0 + 1e-9;
    double glo = g(lo);
    if (glo == 0.0) return lo;
    if (g(hi) == 0.0) return hi;
    if (glo * g(hi) > 0.0)
        throw DesignError("scissor-angle solve: no sign change on [-pi/3, pi/3]");
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if (glo * gm < 0.0)
            hi = mid;
        else {
            lo = mid;
            glo = gm;
        }
    }
    return 0.5 * (lo + hi);
}

OpticalTrain design_s_minus(double phi_minus, const PhysicalFrame& frame) {
    const double omega = solve_scissor_angle(phi_minus);
    const double z0 = frame.rayleigh_range();
    const double a_outer = 0.25 * (kPi - omega);
    const double a_mid = 0.25 * (3.0 * kPi - phi_minus);

    auto pair = [](double radius, double alpha) {
        return std::vector<OpticalElement>{
            OpticalElement::cylindrical(radius, alpha, kDesignIndex),
            OpticalElement::cylindrical(radius, -alpha, kDesignIndex)};
    };

    OpticalTrain t;
    for (const auto& e : pair(0.5 * z0, a_outer)) t.elements.push_back(e);
    t.elements.push_back(OpticalElement::free_space(0.5 * z0));
    for (const auto& e : pair(0.25 * z0, a_mid)) t.elements.push_back(e);
    t.elements.push_back(OpticalElement::free_space(0.5 * z0));
    for (const auto& e : pair(0.5 * z0, a_outer)) t.elements.push_back(e);
    return t;
}

namespace {

OpticalTrain compensator_train(int lens_count, double f, double arm_length) {
    const double end_gap = arm_length / (2.0 * lens_count);
    const double pitch = arm_length / lens_count;
    OpticalTrain t;
    t.elements.push_back(OpticalElement::free_space(end_gap));
    for (int j = 0; j < lens_count; ++j) {
        t.elements.push_back(OpticalElement::spherical(f, kDesignIndex));
        t.elements.push_back(OpticalElement::free_space(j == lens_count - 1 ? end_gap : pitch));
    }
    return t;
}

double compensator_defect(CompensatorTarget target, int lens_count, double f,
                          double arm_length) {
    const RayMatrix m = compose(compensator_train(lens_count, f, arm_length));
    const RayMatrix t = (target == CompensatorTarget::Identity)
                            ? RayMatrix::Identity()
                            : RayMatrix(-RayMatrix::Identity());
    return (m - t).cwiseAbs().maxCoeff();
}

}  // namespace

CompensatorDesign solve_compensator(CompensatorTarget target, int lens_count,
                                    double arm_length) {
    if (lens_count != 2 && lens_count != 4)
        throw InvalidArgument("solve_compensator: lens_count must be 2 or 4");
    if (!(arm_length > 0.0))
        throw InvalidArgument("solve_compensator: arm_length must be positive");

    const double f_lo = arm_length / 60.0;
    const double f_hi = 20.0 * arm_length / 3.0;
    auto defect = [&](double f) {
        return compensator_defect(target, lens_count, f, arm_length);
    };

    // Coarse log-spaced scan, then golden-section refinement around the
    // best sample. The defect is smooth and V-shaped near a solution.
    const int samples = 800;
    double best_f = f_lo, best_d = defect(f_lo);
    for (int i = 1; i <= samples; ++i) {
        const double f = f_lo * std::pow(f_hi / f_lo, double(i) / samples);
        const double d = defect(f);
        if (d < best_d) {
            best_d = d;
            best_f = f;
        }
    }
    const double step = std::pow(f_hi / f_lo, 1.0 / samples);
    double a = best_f / step, b = best_f * step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = defect(c), fd = defect(d);
    while (b - a > 1e-14 * best_f) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = defect(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = defect(d);
        }
    }
    const double f_star = 0.5 * (a + b);
    const double res = defect(f_star);
    if (res > 1e-9) {
        std::ostringstream msg;
        msg << "solve_compensator: no " << lens_count << "-lens solution for "
            << (target == CompensatorTarget::Identity ? "identity" : "minus-identity")
            << " over arm length " << arm_length << " in the focal bracket ["
            << f_lo << ", " << f_hi << "]; best defect " << res;
        throw DesignError(msg.str());
    }
    return CompensatorDesign{compensator_train(lens_count, f_star, arm_length), f_star, res};
}

}  // namespace modespec
