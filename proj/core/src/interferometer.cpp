#include "modespec/interferometer.hpp"

#include <cmath>
#include <numbers>

#include "modespec/errors.hpp"
#include "modespec/fractional.hpp"
#include "modespec/lens_design.hpp"
#include "modespec/spatial.hpp"
#include "modespec/train_propagation.hpp"

namespace modespec {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> samples(double start, double range, int count) {
    std::vector<double> v(count);
    for (int k = 0; k < count; ++k) v[k] = start + range * k / count;
    return v;
}

void primes_of(const CompensatorSetting& c, double& pp, double& mp) {
    switch (c.kind) {
        case CompensatorSetting::Kind::Identity:
            pp = 0.0;
            mp = 0.0;
            break;
        case CompensatorSetting::Kind::MinusIdentity:
            pp = 0.0;
            mp = 2.0 * kPi;
            break;
        case CompensatorSetting::Kind::Custom:
            pp = c.phi_plus_prime;
            mp = c.phi_minus_prime;
            break;
    }
}

void check_normalized(const ComplexField& f) {
    if (std::abs(f.power() - 1.0) > 1e-6)
        throw InvalidArgument("scan input field must be normalized to unit power");
}

}  // namespace

std::string to_string(CompensatorSetting::Kind k) {
    switch (k) {
        case CompensatorSetting::Kind::Identity: return "identity";
        case CompensatorSetting::Kind::MinusIdentity: return "minus-identity";
        case CompensatorSetting::Kind::Custom: return "custom";
    }
    return "?";
}

std::string to_string(Engine e) {
    switch (e) {
        case Engine::Analytic: return "analytic";
        case Engine::Kernel: return "kernel";
        case Engine::LensTrain: return "train";
    }
    return "?";
}

std::vector<double> ScanConfig::phi_plus_samples() const {
    if (k_plus < 1) throw InvalidArgument("k_plus must be >= 1");
    return samples(phi_plus_start, phi_plus_range, k_plus);
}

std::vector<double> ScanConfig::phi_minus_samples() const {
    if (k_minus < 1) throw InvalidArgument("k_minus must be >= 1");
    return samples(phi_minus_start, phi_minus_range, k_minus);
}

double delta_i(const ComplexField& measured, const ComplexField& compensated) {
    return 2.0 * compensated.inner(measured).real();
}

IntensityScan scan_analytic(const WeightSpectrum& weights, const ScanConfig& cfg) {
    double pp, mp;
    primes_of(cfg.compensator, pp, mp);
    IntensityScan scan;
    scan.phi_plus = cfg.phi_plus_samples();
    scan.phi_minus = cfg.phi_minus_samples();
    scan.compensator = cfg.compensator;
    scan.engine = Engine::Analytic;
    scan.values = Eigen::MatrixXd::Zero(cfg.k_plus, cfg.k_minus);
    for (const auto& [m, p] : weights.entries) {
        if (p == 0.0) continue;
        const double fsum = 0.5 * m.order();
        const double fdiff = 0.5 * (m.nx - m.ny);
        for (int i = 0; i < cfg.k_plus; ++i) {
            const double a = fsum * (scan.phi_plus[i] - pp);
            for (int j = 0; j < cfg.k_minus; ++j)
                scan.values(i, j) += 2.0 * p * std::cos(a + fdiff * (scan.phi_minus[j] - mp));
        }
    }
    return scan;
}

IntensityScan scan_analytic(const ModeSpectrum& spectrum, const ScanConfig& cfg) {
    if (!spectrum.is_normalized())
        throw InvalidArgument("scan_analytic: spectrum must be normalized");
    return scan_analytic(weights_of(spectrum), cfg);
}

IntensityScan scan_kernel(const ComplexField& field, const ScanConfig& cfg) {
    check_normalized(field);

    ComplexField comp = field;
    switch (cfg.compensator.kind) {
        case CompensatorSetting::Kind::Identity:
            break;
        case CompensatorSetting::Kind::MinusIdentity:
            comp = apply_parity(field);
            break;
        case CompensatorSetting::Kind::Custom:
            comp = apply_s_minus(apply_s_plus(field, cfg.compensator.phi_plus_prime),
                                 cfg.compensator.phi_minus_prime);
            break;
    }

    IntensityScan scan;
    scan.phi_plus = cfg.phi_plus_samples();
    scan.phi_minus = cfg.phi_minus_samples();
    scan.compensator = cfg.compensator;
    scan.engine = Engine::Kernel;
    scan.values.resize(cfg.k_plus, cfg.k_minus);

    std::vector<KernelPlan> minus_plans;
    minus_plans.reserve(cfg.k_minus);
    for (double v : scan.phi_minus)
        minus_plans.emplace_back(KernelPlan::Kind::SMinus, v, field.grid, field.frame);

    for (int i = 0; i < cfg.k_plus; ++i) {
        const KernelPlan plus_plan(KernelPlan::Kind::SPlus, scan.phi_plus[i],
                                   field.grid, field.frame);
        const ComplexField mid = plus_plan.apply(field);
        for (int j = 0; j < cfg.k_minus; ++j)
            scan.values(i, j) = delta_i(minus_plans[j].apply(mid), comp);
    }
    return scan;
}

IntensityScan scan_train(const ComplexField& field, const ScanConfig& cfg) {
    check_normalized(field);

    auto in_window = [](double v) { return v >= kPi - 1e-9 && v <= 3.0 * kPi + 1e-9; };
    IntensityScan scan;
    scan.phi_plus = cfg.phi_plus_samples();
    scan.phi_minus = cfg.phi_minus_samples();
    for (double v : scan.phi_plus)
        if (!in_window(v))
            throw RangeError("scan_train: phi_plus sample outside the train window [pi, 3pi]");
    for (double v : scan.phi_minus)
        if (!in_window(v))
            throw RangeError("scan_train: phi_minus sample outside the train window [pi, 3pi]");
    scan.compensator = cfg.compensator;
    scan.engine = Engine::LensTrain;
    scan.values.resize(cfg.k_plus, cfg.k_minus);

    const double z0 = field.frame.rayleigh_range();
    const double arm = 3.0 * z0;  // 2 z0 (plus train) + z0 (minus train)

    OpticalTrain comp_train;
    switch (cfg.compensator.kind) {
        case CompensatorSetting::Kind::Identity:
            comp_train = solve_compensator(CompensatorTarget::Identity, 4, arm).train;
            break;
        case CompensatorSetting::Kind::MinusIdentity:
            comp_train = solve_compensator(CompensatorTarget::MinusIdentity, 2, arm).train;
            break;
        case CompensatorSetting::Kind::Custom: {
            comp_train = design_s_plus(cfg.compensator.phi_plus_prime, field.frame);
            const OpticalTrain sm = design_s_minus(cfg.compensator.phi_minus_prime, field.frame);
            comp_train.elements.insert(comp_train.elements.end(), sm.elements.begin(),
                                       sm.elements.end());
            break;
        }
    }

    // Fringe-lock reference: the ground mode probes the same hardware so
    // angle-dependent propagation phases cancel out of the observable.
    const ComplexField ground = eval_hg({0, 0}, field.frame, field.grid);
    const ComplexField comp_out = apply_train(field, comp_train);
    const ComplexField comp_ground = apply_train(ground, comp_train);

    std::vector<OpticalTrain> minus_trains;
    minus_trains.reserve(cfg.k_minus);
    for (double v : scan.phi_minus) minus_trains.push_back(design_s_minus(v, field.frame));

    for (int i = 0; i < cfg.k_plus; ++i) {
        OpticalTrain plus_train = design_s_plus(scan.phi_plus[i], field.frame);
        for (const ElementOffset& o : cfg.s_plus_offsets) {
            if (o.element_index < 0 ||
                o.element_index >= static_cast<int>(plus_train.elements.size()))
                throw InvalidArgument("scan_train: offset element index out of range");
            plus_train.elements[o.element_index].offset_x = o.dx;
            plus_train.elements[o.element_index].offset_y = o.dy;
        }
        const ComplexField mid = apply_train(field, plus_train);
        const ComplexField mid_ground = apply_train(ground, plus_train);
        for (int j = 0; j < cfg.k_minus; ++j) {
            const ComplexField meas = apply_train(mid, minus_trains[j]);
            const ComplexField meas_ground = apply_train(mid_ground, minus_trains[j]);
            std::complex<double> lock = comp_ground.inner(meas_ground);
            const double mag = std::abs(lock);
            lock = (mag > 0.0) ? lock / mag : std::complex<double>(1.0, 0.0);
            scan.values(i, j) = 2.0 * (std::conj(lock) * comp_out.inner(meas)).real();
        }
    }
    return scan;
}

}  // namespace modespec
