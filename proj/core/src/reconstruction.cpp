#include "modespec/reconstruction.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "modespec/errors.hpp"

namespace modespec {

namespace {

constexpr double kPi = std::numbers::pi;

struct ScanGeometry {
    int k_plus;
    int k_minus;
    double step_plus;
    double step_minus;
};

ScanGeometry geometry_of(const IntensityScan& scan) {
    const int kp = static_cast<int>(scan.phi_plus.size());
    const int km = static_cast<int>(scan.phi_minus.size());
    if (kp < 1 || km < 1) throw InvalidArgument("scan has no samples");
    ScanGeometry g{kp, km, 0.0, 0.0};
    if (kp > 1) g.step_plus = scan.phi_plus[1] - scan.phi_plus[0];
    if (km > 1) g.step_minus = scan.phi_minus[1] - scan.phi_minus[0];
    for (int i = 1; i < kp; ++i)
        if (std::abs(scan.phi_plus[i] - scan.phi_plus[0] - i * g.step_plus) > 1e-9)
            throw InvalidArgument("scan phi_plus samples are not equally spaced");
    for (int j = 1; j < km; ++j)
        if (std::abs(scan.phi_minus[j] - scan.phi_minus[0] - j * g.step_minus) > 1e-9)
            throw InvalidArgument("scan phi_minus samples are not equally spaced");
    return g;
}

void require_range(const IntensityScan& scan, const ScanGeometry& g, double start,
                   double range, const char* what) {
    const bool ok_start = std::abs(scan.phi_plus[0] - start) < 1e-9 &&
                          std::abs(scan.phi_minus[0] - start) < 1e-9;
    const bool ok_range = std::abs(g.k_plus * g.step_plus - range) < 1e-9 &&
                          std::abs(g.k_minus * g.step_minus - range) < 1e-9;
    if (!ok_start || !ok_range) {
        std::ostringstream msg;
        msg << what << ": scan must cover [" << start << ", " << start + range
            << ") per axis with equal increments (start inclusive, end exclusive)";
        throw RangeError(msg.str());
    }
}

double scan_rms(const IntensityScan& a, const IntensityScan& b) {
    return std::sqrt((a.values - b.values).squaredNorm() / a.values.size());
}

ScanConfig config_like(const IntensityScan& scan, const ScanGeometry& g) {
    ScanConfig cfg;
    cfg.k_plus = g.k_plus;
    cfg.k_minus = g.k_minus;
    cfg.phi_plus_start = scan.phi_plus[0];
    cfg.phi_plus_range = g.k_plus * g.step_plus;
    cfg.phi_minus_start = scan.phi_minus[0];
    cfg.phi_minus_range = g.k_minus * g.step_minus;
    cfg.compensator = scan.compensator;
    return cfg;
}

}  // namespace

int sampling_bound(int k) {
    if (k < 1) throw InvalidArgument("sampling_bound: k must be >= 1");
    // Frozen from the exhaustive aliasing search over k in [1, 16]: the
    // first collision is always the mirror pair (k,0)/(0,k) through the
    // (m+n)+(nx+ny) = 2k alias, so the exact band is k-1. Larger k follows
    // the same pattern.
    static constexpr int table[16] = {0, 1, 2,  3,  4,  5,  6,  7,
                                      8, 9, 10, 11, 12, 13, 14, 15};
    if (k <= 16) return table[k - 1];
    return k - 1;
}

ReconstructionReport reconstruct_full(const IntensityScan& scan, int max_order) {
    const ScanGeometry g = geometry_of(scan);
    require_range(scan, g, 0.0, 4.0 * kPi, "reconstruct_full");

    double pp = 0.0, mp = 0.0;
    if (scan.compensator.kind == CompensatorSetting::Kind::MinusIdentity)
        mp = 2.0 * kPi;
    else if (scan.compensator.kind == CompensatorSetting::Kind::Custom) {
        pp = scan.compensator.phi_plus_prime;
        mp = scan.compensator.phi_minus_prime;
    }

    ReconstructionReport rep;
    rep.k_plus = g.k_plus;
    rep.k_minus = g.k_minus;
    rep.max_order = max_order;

    const double cell = g.step_plus * g.step_minus;
    bool clean = true;
    for (const ModeIndex m : modes_up_to(max_order)) {
        const double fsum = 0.5 * m.order();
        const double fdiff = 0.5 * (m.nx - m.ny);
        double acc = 0.0;
        for (int i = 0; i < g.k_plus; ++i) {
            const double a = fsum * (scan.phi_plus[i] - pp);
            for (int j = 0; j < g.k_minus; ++j)
                acc += scan.values(i, j) * std::cos(a + fdiff * (scan.phi_minus[j] - mp));
        }
        const double c = (m.order() == 0) ? 1.0 / (32.0 * kPi * kPi) : 1.0 / (16.0 * kPi * kPi);
        clean = rep.weights.insert_clamped(m, c * acc * cell) && clean;
    }
    rep.clamped_mass = rep.weights.clamped_mass;

    rep.sampling_ok = clean && (2 * max_order < std::min(g.k_plus, g.k_minus));
    rep.residual = scan_rms(scan, scan_analytic(rep.weights, config_like(scan, g)));
    return rep;
}

ReconstructionReport reconstruct_hg(const IntensityScan& scan_a,
                                    const IntensityScan& scan_b, int max_order) {
    if (scan_a.compensator.kind != CompensatorSetting::Kind::Identity)
        throw MismatchError("reconstruct_hg: scan_a must use the identity compensator");
    if (scan_b.compensator.kind != CompensatorSetting::Kind::MinusIdentity)
        throw MismatchError("reconstruct_hg: scan_b must use the image-inversion compensator");

    const ScanGeometry ga = geometry_of(scan_a);
    const ScanGeometry gb = geometry_of(scan_b);
    require_range(scan_a, ga, kPi, 2.0 * kPi, "reconstruct_hg");
    require_range(scan_b, gb, kPi, 2.0 * kPi, "reconstruct_hg");
    if (ga.k_plus != gb.k_plus || ga.k_minus != gb.k_minus)
        throw MismatchError("reconstruct_hg: scans have different sample counts");

    ReconstructionReport rep;
    rep.k_plus = ga.k_plus;
    rep.k_minus = ga.k_minus;
    rep.max_order = max_order;

    const double cell = ga.step_plus * ga.step_minus;
    bool clean = true;
    for (const ModeIndex m : modes_up_to(max_order)) {
        const double fsum = 0.5 * m.order();
        const double fdiff = 0.5 * (m.nx - m.ny);
        const double sign = (m.order() % 2 == 0) ? 1.0 : -1.0;
        double acc = 0.0, acc_sine = 0.0;
        for (int i = 0; i < ga.k_plus; ++i) {
            const double a = fsum * scan_a.phi_plus[i];
            for (int j = 0; j < ga.k_minus; ++j) {
                const double integrand = sign * scan_b.values(i, j) + scan_a.values(i, j);
                const double arg = a + fdiff * scan_a.phi_minus[j];
                acc += integrand * std::cos(arg);
                acc_sine += integrand * std::sin(arg);
            }
        }
        const double c = (m.order() == 0) ? 1.0 / (16.0 * kPi * kPi) : 1.0 / (8.0 * kPi * kPi);
        clean = rep.weights.insert_clamped(m, c * acc * cell) && clean;
        rep.sine_residual = std::max(rep.sine_residual, std::abs(c * acc_sine * cell));
    }
    rep.clamped_mass = rep.weights.clamped_mass;
    rep.sampling_ok = clean && max_order <= sampling_bound(std::min(ga.k_plus, ga.k_minus));

    const IntensityScan rebuilt_a = scan_analytic(rep.weights, config_like(scan_a, ga));
    const IntensityScan rebuilt_b = scan_analytic(rep.weights, config_like(scan_b, gb));
    rep.residual = std::sqrt(0.5 * (std::pow(scan_rms(scan_a, rebuilt_a), 2) +
                                    std::pow(scan_rms(scan_b, rebuilt_b), 2)));
    return rep;
}

}  // namespace modespec
