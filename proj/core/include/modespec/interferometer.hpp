#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modespec/field.hpp"
#include "modespec/modes.hpp"

namespace modespec {

/// Reference transformation in the compensating arm. The two standard
/// settings (identity and image inversion) are what the two-compensator
/// inversion consumes; Custom carries explicit primed angles.
struct CompensatorSetting {
    enum class Kind { Identity, MinusIdentity, Custom };

    Kind kind = Kind::Identity;
    double phi_plus_prime = 0.0;
    double phi_minus_prime = 0.0;

    static CompensatorSetting identity() { return {Kind::Identity, 0.0, 0.0}; }
    static CompensatorSetting minus_identity() { return {Kind::MinusIdentity, 0.0, 2.0 * 3.14159265358979323846}; }
    static CompensatorSetting custom(double pp, double mp) { return {Kind::Custom, pp, mp}; }

    friend bool operator==(const CompensatorSetting&, const CompensatorSetting&) = default;
};

enum class Engine { Analytic, Kernel, LensTrain };

std::string to_string(CompensatorSetting::Kind k);
std::string to_string(Engine e);

/// Per-element transverse offset injected into a designed train
/// (misalignment studies). Index counts elements of the s_plus train.
struct ElementOffset {
    int element_index = 0;
    double dx = 0.0;
    double dy = 0.0;
};

/// Sample layout: k-th sample at start + k*(range/count), start inclusive,
/// end exclusive. The defaults cover the accessible window [π, 3π).
struct ScanConfig {
    int k_plus = 10;
    int k_minus = 10;
    double phi_plus_start = 3.14159265358979323846;
    double phi_plus_range = 2.0 * 3.14159265358979323846;
    double phi_minus_start = 3.14159265358979323846;
    double phi_minus_range = 2.0 * 3.14159265358979323846;
    CompensatorSetting compensator;
    Engine engine = Engine::Analytic;
    std::vector<ElementOffset> s_plus_offsets;  // LensTrain engine only

    std::vector<double> phi_plus_samples() const;
    std::vector<double> phi_minus_samples() const;
};

/// ΔI(φ₊, φ₋) table; values(i, j) belongs to (phi_plus[i], phi_minus[j]).
struct IntensityScan {
    std::vector<double> phi_plus;
    std::vector<double> phi_minus;
    Eigen::MatrixXd values;
    CompensatorSetting compensator;
    Engine engine = Engine::Analytic;
};

/// Balanced-detector observable for a symmetric splitter pair:
/// 2·Re⟨compensated, measured⟩, in [-2, 2] for unit-power inputs.
double delta_i(const ComplexField& measured, const ComplexField& compensated);

/// Closed-form engine: ΔI = 2 Σ P_{m,n} cos[(m+n)Δφ₊/2 + (m-n)Δφ₋/2]
/// with Δφ± the offsets from the compensator's primed angles. Exact to
/// floating precision; the fast reference for the other engines.
IntensityScan scan_analytic(const WeightSpectrum& weights, const ScanConfig& cfg);
IntensityScan scan_analytic(const ModeSpectrum& spectrum, const ScanConfig& cfg);

/// Integral-kernel engine: the measured arm applies the s_plus then the
/// s_minus kernel at each sample pair; the compensated arm applies the
/// setting's reference transform.
IntensityScan scan_kernel(const ComplexField& field, const ScanConfig& cfg);

/// Full physical simulation: designed lens trains propagated in the wave
/// domain, including any injected element offsets. Sample angles must lie
/// inside the trains' operational window [π, 3π].
///
/// Wave trains accumulate angle-dependent propagation phases that a real
/// instrument nulls with its fringe lock. The simulation does the same:
/// the ground mode is sent through both arms at each setting and the
/// measured arm is referenced to its phase before detection.
IntensityScan scan_train(const ComplexField& field, const ScanConfig& cfg);

}  // namespace modespec
