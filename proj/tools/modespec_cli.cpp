// modespec: transverse-mode spectrum analysis toolkit.
//
// Subcommands wire the library into complete workflows: decompose a beam
// into mode weights, design the scan lens trains, simulate interferometric
// intensity-difference scans, invert scans back to weights, and study the
// effect of transverse lens misalignment.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "modespec/beams.hpp"
#include "modespec/fractional.hpp"
#include "modespec/io.hpp"
#include "modespec/lens_design.hpp"
#include "modespec/reconstruction.hpp"

namespace fs = std::filesystem;
using namespace modespec;

namespace {

constexpr double kPi = std::numbers::pi;

// Exit codes: 0 success, 1 tolerance failure, 2 input/parse error,
// 3 range/design error.
constexpr int kExitTolerance = 1;
constexpr int kExitParse = 2;
constexpr int kExitRange = 3;

struct CommonOptions {
    double w0 = 1.0;
    double lambdabar = 0.5;
    int grid_samples = 512;
    double window = 8.0;
    int max_order = 10;
    std::string out_dir = ".";
    unsigned seed = 0;

    PhysicalFrame frame() const { return make_frame(w0, lambdabar); }
    GridSpec grid() const { return make_grid(grid_samples, grid_samples, window); }
    fs::path out() const {
        fs::create_directories(out_dir);
        return out_dir;
    }
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--w0", opt.w0, "Mode-basis waist (length unit of the run)");
    cmd->add_option("--lambdabar", opt.lambdabar, "Reduced wavelength 1/k");
    cmd->add_option("--grid", opt.grid_samples, "Samples per grid axis");
    cmd->add_option("--window", opt.window, "Grid half-window in units of w0");
    cmd->add_option("--max-order", opt.max_order, "Highest total mode order");
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_option("--seed", opt.seed, "Seed recorded for reproducibility");
}

ComplexField load_and_realize(const std::string& beam_path, const CommonOptions& opt) {
    return realize(load_beam(beam_path), opt.frame(), opt.grid());
}

void emit_with_table(const fs::path& csv) {
    fs::path table = csv;
    table.replace_extension(".dat");
    io::write_csv_as_table(csv, table);
}

int cmd_decompose(const std::string& beam_path, const CommonOptions& opt) {
    const ComplexField beam = load_and_realize(beam_path, opt);
    const DecompositionResult dec = decompose(beam, opt.max_order);

    const fs::path dir = opt.out();
    io::write_spectrum_csv(dir / "spectrum.csv", dec.spectrum);
    io::write_weights_csv(dir / "weights.csv", weights_of(dec.spectrum));
    emit_with_table(dir / "weights.csv");

    ReconstructionReport rep;
    rep.weights = weights_of(dec.spectrum);
    rep.residual = dec.residual;
    rep.max_order = opt.max_order;
    io::write_report_json(dir / "report.json", rep);

    std::cout << "decomposed " << beam_path << " to order " << opt.max_order
              << "; captured weight " << rep.weights.total() << ", residual "
              << dec.residual << "\n";
    return 0;
}

int cmd_design_lenses(int sweep_samples, double phi_plus, double phi_minus,
                      const CommonOptions& opt) {
    const PhysicalFrame frame = opt.frame();
    const double z0 = frame.rayleigh_range();
    const fs::path dir = opt.out();

    double worst_plus = 0.0, worst_minus = 0.0;
    {
        std::ofstream curve(dir / "s_plus_curve.csv");
        curve << "phi,R1,R2,defect\n";
        for (int i = 0; i < sweep_samples; ++i) {
            const double phi = kPi + 2.0 * kPi * i / (sweep_samples - 1.0);
            const OpticalTrain t = design_s_plus(phi, frame);
            const double defect =
                (compose(t) - s_plus(phi, frame)).cwiseAbs().maxCoeff();
            worst_plus = std::max(worst_plus, defect);
            const double r1 = t.elements[0].flat
                                  ? std::numeric_limits<double>::infinity()
                                  : t.elements[0].radius / z0;
            curve << io::format_double(phi) << "," << io::format_double(r1) << ","
                  << io::format_double(t.elements[2].radius / z0) << ","
                  << io::format_double(defect) << "\n";
        }
    }
    emit_with_table(dir / "s_plus_curve.csv");

    {
        std::ofstream curve(dir / "s_minus_curve.csv");
        curve << "phi,Omega,alpha1,alpha2,defect\n";
        for (int i = 0; i < sweep_samples; ++i) {
            const double phi = kPi + 2.0 * kPi * i / (sweep_samples - 1.0);
            const double omega = solve_scissor_angle(phi);
            const OpticalTrain t = design_s_minus(phi, frame);
            const double defect =
                (compose(t) - s_minus(phi, frame)).cwiseAbs().maxCoeff();
            worst_minus = std::max(worst_minus, defect);
            curve << io::format_double(phi) << "," << io::format_double(omega) << ","
                  << io::format_double(0.25 * (kPi - omega)) << ","
                  << io::format_double(0.25 * (3.0 * kPi - phi)) << ","
                  << io::format_double(defect) << "\n";
        }
    }
    emit_with_table(dir / "s_minus_curve.csv");

    io::write_train_csv(dir / "s_plus_train.csv", design_s_plus(phi_plus, frame), frame);
    io::write_train_csv(dir / "s_minus_train.csv", design_s_minus(phi_minus, frame), frame);
    const double arm = 3.0 * z0;
    const CompensatorDesign comp_id = solve_compensator(CompensatorTarget::Identity, 4, arm);
    const CompensatorDesign comp_mi = solve_compensator(CompensatorTarget::MinusIdentity, 2, arm);
    io::write_train_csv(dir / "compensator_identity.csv", comp_id.train, frame);
    io::write_train_csv(dir / "compensator_minus_identity.csv", comp_mi.train, frame);

    std::cout << "operation curves over [pi, 3pi] (" << sweep_samples << " samples)\n"
              << "  max defect: S+ " << worst_plus << ", S- " << worst_minus << "\n"
              << "  train files at phi_plus=" << phi_plus << ", phi_minus=" << phi_minus
              << "\n"
              << "  compensators: identity f=" << comp_id.focal_length / z0
              << " z0 (defect " << comp_id.residual << "), minus-identity f="
              << comp_mi.focal_length / z0 << " z0 (defect " << comp_mi.residual << ")\n";
    if (worst_plus > 1e-10 || worst_minus > 1e-9) {
        std::cerr << "design verification exceeded tolerance\n";
        return kExitTolerance;
    }
    return 0;
}

int cmd_simulate_scan(const std::string& beam_path, const std::string& engine_name,
                      int k_plus, int k_minus, bool cross_check, double tol,
                      const CommonOptions& opt) {
    Engine engine;
    if (engine_name == "analytic")
        engine = Engine::Analytic;
    else if (engine_name == "kernel")
        engine = Engine::Kernel;
    else if (engine_name == "train")
        engine = Engine::LensTrain;
    else
        throw CLI::ValidationError("--engine must be analytic, kernel or train");

    const ComplexField beam = load_and_realize(beam_path, opt);
    const fs::path dir = opt.out();

    ScanConfig cfg;
    cfg.k_plus = k_plus;
    cfg.k_minus = k_minus;
    cfg.engine = engine;

    double cross_dev = 0.0;
    for (const auto& [setting, name] :
         {std::pair{CompensatorSetting::identity(), "scan_identity.csv"},
          std::pair{CompensatorSetting::minus_identity(), "scan_minus_identity.csv"}}) {
        cfg.compensator = setting;
        IntensityScan scan;
        switch (engine) {
            case Engine::Analytic:
                // truncated band weights, deliberately unnormalized
                scan = scan_analytic(weights_of(decompose(beam, opt.max_order).spectrum), cfg);
                break;
            case Engine::Kernel:
                scan = scan_kernel(beam, cfg);
                break;
            case Engine::LensTrain:
                scan = scan_train(beam, cfg);
                break;
        }
        io::write_scan_csv(dir / name, scan);
        emit_with_table(dir / name);
        if (cross_check && engine != Engine::Analytic) {
            const IntensityScan ref =
                scan_analytic(weights_of(decompose(beam, opt.max_order).spectrum), cfg);
            cross_dev = std::max(cross_dev, (scan.values - ref.values).cwiseAbs().maxCoeff());
        }
    }

    std::cout << "scans written (" << engine_name << " engine, K=" << k_plus << "x"
              << k_minus << ")\n";
    if (cross_check && engine != Engine::Analytic) {
        std::cout << "  cross-check vs analytic: max deviation " << cross_dev << "\n";
        if (cross_dev > tol) {
            std::cerr << "cross-check deviation above tolerance " << tol << "\n";
            return kExitTolerance;
        }
    }
    return 0;
}

int cmd_reconstruct(const std::string& scan_a_path, const std::string& scan_b_path,
                    const std::string& compare_path, double compare_tol,
                    const CommonOptions& opt) {
    const IntensityScan scan_a = io::read_scan_csv(scan_a_path);
    const IntensityScan scan_b = io::read_scan_csv(scan_b_path);
    const ReconstructionReport rep = reconstruct_hg(scan_a, scan_b, opt.max_order);

    const fs::path dir = opt.out();
    io::write_weights_csv(dir / "weights.csv", rep.weights);
    emit_with_table(dir / "weights.csv");
    io::write_report_json(dir / "report.json", rep);

    std::cout << "reconstructed weights to order " << opt.max_order << "; total "
              << rep.weights.total() << ", residual " << rep.residual
              << ", sampling_ok " << (rep.sampling_ok ? "true" : "false") << "\n";
    if (!compare_path.empty()) {
        WeightSpectrum ref;
        std::ifstream probe(compare_path);
        std::string header;
        std::getline(probe, header);
        if (header.rfind("nx,ny,re,im", 0) == 0)
            ref = weights_of(io::read_spectrum_csv(compare_path, opt.frame()));
        else
            ref = io::read_weights_csv(compare_path);

        std::ofstream cmp(dir / "compare.csv");
        cmp << "nx,ny,reconstructed,reference,abs_error\n";
        double max_err = 0.0;
        for (const ModeIndex m : modes_up_to(opt.max_order)) {
            const double a = rep.weights.at(m), b = ref.at(m);
            max_err = std::max(max_err, std::abs(a - b));
            cmp << m.nx << "," << m.ny << "," << io::format_double(a) << ","
                << io::format_double(b) << "," << io::format_double(std::abs(a - b))
                << "\n";
        }
        std::cout << "  compare: max per-mode error " << max_err << "\n";
        if (max_err > compare_tol) {
            std::cerr << "per-mode error above tolerance " << compare_tol << "\n";
            return kExitTolerance;
        }
    }
    return 0;
}

int cmd_misalignment_study(const std::string& beam_path, std::vector<double> deltas,
                           int lens_index, int k, const CommonOptions& opt) {
    const PhysicalFrame frame = opt.frame();
    const GridSpec grid = opt.grid();
    const ComplexField beam = beam_path.empty()
                                  ? eval_hg({0, 0}, frame, grid)
                                  : realize(load_beam(beam_path), frame, grid);
    if (deltas.empty())
        deltas = {1e-3, 3.162e-3, 1e-2, 3.162e-2, 1e-1};

    auto reconstruct_at = [&](double delta) {
        ScanConfig cfg;
        cfg.k_plus = k;
        cfg.k_minus = k;
        cfg.engine = Engine::LensTrain;
        if (delta != 0.0)
            cfg.s_plus_offsets = {{lens_index, delta * frame.w0, 0.0}};
        cfg.compensator = CompensatorSetting::identity();
        const IntensityScan a = scan_train(beam, cfg);
        cfg.compensator = CompensatorSetting::minus_identity();
        const IntensityScan b = scan_train(beam, cfg);
        return reconstruct_hg(a, b, opt.max_order).weights;
    };

    const WeightSpectrum base = reconstruct_at(0.0);
    const fs::path dir = opt.out();
    std::ofstream table(dir / "misalignment.csv");
    table << "delta_over_w0,max_weight_error\n";

    std::vector<double> log_d, log_e;
    double err_at_max = 0.0;
    for (double d : deltas) {
        const WeightSpectrum w = reconstruct_at(d);
        double err = 0.0;
        for (const ModeIndex m : modes_up_to(opt.max_order))
            err = std::max(err, std::abs(w.at(m) - base.at(m)));
        table << io::format_double(d) << "," << io::format_double(err) << "\n";
        std::cout << "  delta/w0=" << d << ": max weight error " << err << "\n";
        if (err > 0.0) {
            log_d.push_back(std::log(d));
            log_e.push_back(std::log(err));
        }
        err_at_max = err;
    }
    table.close();
    emit_with_table(dir / "misalignment.csv");

    // least-squares slope of log(err) vs log(delta)
    double slope = 0.0;
    if (log_d.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < log_d.size(); ++i) {
            sx += log_d[i];
            sy += log_e[i];
            sxx += log_d[i] * log_d[i];
            sxy += log_d[i] * log_e[i];
        }
        const double n = static_cast<double>(log_d.size());
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    std::ofstream rep(dir / "misalignment_report.json");
    rep << "{\n  \"fitted_slope\": " << io::format_double(slope)
        << ",\n  \"error_at_largest_delta\": " << io::format_double(err_at_max)
        << ",\n  \"lens_index\": " << lens_index << "\n}\n";
    std::cout << "fitted log-log slope " << slope << "; error at delta/w0="
              << deltas.back() << " is " << err_at_max << "\n";
    return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path, double tol,
                const CommonOptions& opt) {
    auto load_weights = [&](const std::string& p) {
        std::ifstream probe(p);
        if (!probe) throw ParseError("cannot open " + p);
        std::string header;
        std::getline(probe, header);
        if (header.rfind("nx,ny,re,im", 0) == 0)
            return weights_of(io::read_spectrum_csv(p, opt.frame()));
        return io::read_weights_csv(p);
    };
    const WeightSpectrum a = load_weights(a_path);
    const WeightSpectrum b = load_weights(b_path);

    std::map<ModeIndex, double> merged;
    for (const auto& [m, v] : a.entries) merged[m] = 0.0;
    for (const auto& [m, v] : b.entries) merged[m] = 0.0;
    double max_err = 0.0, tv = 0.0;
    std::cout << "nx ny a b abs_error\n";
    for (const auto& [m, unused] : merged) {
        const double va = a.at(m), vb = b.at(m);
        max_err = std::max(max_err, std::abs(va - vb));
        tv += 0.5 * std::abs(va - vb);
        std::cout << m.nx << " " << m.ny << " " << io::format_double(va) << " "
                  << io::format_double(vb) << " " << io::format_double(std::abs(va - vb))
                  << "\n";
    }
    std::cout << "max per-mode error " << max_err << "; total-variation distance " << tv
              << "\n";
    return max_err <= tol ? 0 : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transverse-mode spectrum analysis toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;

    // decompose
    auto* dec = app.add_subcommand("decompose", "Overlap-integral mode decomposition");
    std::string beam_path;
    dec->add_option("--beam", beam_path, "Beam file (recipe, CSV, or container)")->required();
    add_common(dec, opt);

    // design-lenses
    auto* des = app.add_subcommand("design-lenses", "Lens trains and operation curves");
    int sweep_samples = 50;
    double phi_plus = 2.0 * kPi, phi_minus = 2.0 * kPi;
    des->add_option("--sweep-samples", sweep_samples, "Operation-curve sample count");
    des->add_option("--phi-plus", phi_plus, "Angle for the emitted S+ train file");
    des->add_option("--phi-minus", phi_minus, "Angle for the emitted S- train file");
    add_common(des, opt);

    // simulate-scan
    auto* sim = app.add_subcommand("simulate-scan", "Intensity-difference scans");
    std::string engine_name = "kernel";
    int k_plus = 10, k_minus = 10;
    bool cross_check = false;
    double cross_tol = 1e-4;
    sim->add_option("--beam", beam_path, "Beam file")->required();
    sim->add_option("--engine", engine_name, "analytic | kernel | train");
    sim->add_option("--k-plus", k_plus, "Samples along phi_plus");
    sim->add_option("--k-minus", k_minus, "Samples along phi_minus");
    sim->add_flag("--cross-check", cross_check, "Compare against the analytic engine");
    sim->add_option("--cross-tol", cross_tol, "Cross-check tolerance");
    add_common(sim, opt);

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "Invert a scan pair to mode weights");
    std::string scan_a_path, scan_b_path, compare_path;
    double compare_tol = 1e-3;
    rec->add_option("--scan-a", scan_a_path, "Identity-compensator scan CSV")->required();
    rec->add_option("--scan-b", scan_b_path, "Image-inversion-compensator scan CSV")->required();
    rec->add_option("--compare", compare_path, "Reference spectrum/weights CSV");
    rec->add_option("--compare-tol", compare_tol, "Per-mode tolerance for --compare");
    add_common(rec, opt);

    // misalignment-study
    auto* mis = app.add_subcommand("misalignment-study",
                                   "Weight error vs transverse lens offset");
    std::vector<double> deltas;
    int lens_index = 0;
    int k_scan = 10;
    std::string mis_beam;
    mis->add_option("--beam", mis_beam, "Beam file (default: ground mode)");
    mis->add_option("--deltas", deltas, "Offsets in units of w0");
    mis->add_option("--lens-index", lens_index, "Element index in the S+ train");
    mis->add_option("--k", k_scan, "Scan samples per axis");
    add_common(mis, opt);

    // compare
    auto* cmp = app.add_subcommand("compare", "Per-mode comparison of two weight files");
    std::string cmp_a, cmp_b;
    double cmp_tol = 1e-6;
    cmp->add_option("--a", cmp_a, "First spectrum/weights CSV")->required();
    cmp->add_option("--b", cmp_b, "Second spectrum/weights CSV")->required();
    cmp->add_option("--tol", cmp_tol, "Max per-mode tolerance");
    add_common(cmp, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed()) return cmd_decompose(beam_path, opt);
        if (des->parsed()) return cmd_design_lenses(sweep_samples, phi_plus, phi_minus, opt);
        if (sim->parsed())
            return cmd_simulate_scan(beam_path, engine_name, k_plus, k_minus, cross_check,
                                     cross_tol, opt);
        if (rec->parsed())
            return cmd_reconstruct(scan_a_path, scan_b_path, compare_path, compare_tol, opt);
        if (mis->parsed())
            return cmd_misalignment_study(mis_beam, deltas, lens_index, k_scan, opt);
        if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_tol, opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const MismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRange;
    } catch (const DesignError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRange;
    } catch (const GridError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRange;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRange;
    }
    return 0;
}
