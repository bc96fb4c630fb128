#include "modespec/io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "modespec/errors.hpp"

namespace modespec {
namespace io {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, size_t line,
                             const std::string& what) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": " << what;
    throw ParseError(msg.str());
}

std::ifstream open_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return in;
}

std::ofstream create_text(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot create " + path.string());
    return out;
}

std::string strip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ')) s.pop_back();
    size_t b = 0;
    while (b < s.size() && s[b] == ' ') ++b;
    return s.substr(b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::filesystem::path& path, size_t line, const std::string& tok) {
    const std::string t = strip(tok);
    if (t == "inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size())
        parse_fail(path, line, "expected a number, got '" + t + "'");
    return v;
}

long parse_int(const std::filesystem::path& path, size_t line, const std::string& tok) {
    const std::string t = strip(tok);
    long v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size())
        parse_fail(path, line, "expected an integer, got '" + t + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf;
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

void write_spectrum_csv(const std::filesystem::path& path, const ModeSpectrum& s) {
    auto out = create_text(path);
    out << "nx,ny,re,im\n";
    for (const auto& [m, c] : s.entries)
        out << m.nx << "," << m.ny << "," << format_double(c.real()) << ","
            << format_double(c.imag()) << "\n";
}

ModeSpectrum read_spectrum_csv(const std::filesystem::path& path,
                               const PhysicalFrame& frame) {
    auto in = open_text(path);
    std::string line;
    size_t lineno = 1;
    if (!std::getline(in, line) || strip(line) != "nx,ny,re,im")
        parse_fail(path, lineno, "expected header 'nx,ny,re,im'");
    ModeSpectrum s;
    s.frame = frame;
    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        const auto tok = split(line, ',');
        if (tok.size() != 4) parse_fail(path, lineno, "expected 4 columns");
        const int nx = static_cast<int>(parse_int(path, lineno, tok[0]));
        const int ny = static_cast<int>(parse_int(path, lineno, tok[1]));
        if (nx < 0 || ny < 0) parse_fail(path, lineno, "mode indices must be nonnegative");
        s.entries[{nx, ny}] = {parse_double(path, lineno, tok[2]),
                               parse_double(path, lineno, tok[3])};
    }
    return s;
}

void write_weights_csv(const std::filesystem::path& path, const WeightSpectrum& w) {
    auto out = create_text(path);
    out << "nx,ny,weight\n";
    for (const auto& [m, v] : w.entries)
        out << m.nx << "," << m.ny << "," << format_double(v) << "\n";
}

WeightSpectrum read_weights_csv(const std::filesystem::path& path) {
    auto in = open_text(path);
    std::string line;
    size_t lineno = 1;
    if (!std::getline(in, line) || strip(line) != "nx,ny,weight")
        parse_fail(path, lineno, "expected header 'nx,ny,weight'");
    WeightSpectrum w;
    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        const auto tok = split(line, ',');
        if (tok.size() != 3) parse_fail(path, lineno, "expected 3 columns");
        const int nx = static_cast<int>(parse_int(path, lineno, tok[0]));
        const int ny = static_cast<int>(parse_int(path, lineno, tok[1]));
        const double v = parse_double(path, lineno, tok[2]);
        if (nx < 0 || ny < 0) parse_fail(path, lineno, "mode indices must be nonnegative");
        if (!w.insert_clamped({nx, ny}, v))
            parse_fail(path, lineno, "weight " + format_double(v) +
                                         " is below the -1e-6 noise floor; broken input");
    }
    return w;
}

namespace {

constexpr char kMagic[4] = {'M', 'S', 'P', 'C'};
constexpr uint64_t kFieldVersion = 1;

void put_u64(std::ofstream& out, uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
}
void put_f64(std::ofstream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
}

}  // namespace

void write_field(const std::filesystem::path& path, const ComplexField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot create " + path.string());
    out.write(kMagic, 4);
    put_u64(out, kFieldVersion);
    put_u64(out, static_cast<uint64_t>(f.grid.samples_x));
    put_u64(out, static_cast<uint64_t>(f.grid.samples_y));
    put_f64(out, f.grid.half_window);
    put_f64(out, f.frame.w0);
    put_f64(out, f.frame.lambdabar);
    const char pad[12] = {};
    out.write(pad, 12);
    // column-major storage is already "x fastest within a row of constant y"
    out.write(reinterpret_cast<const char*>(f.amp.data()),
              static_cast<std::streamsize>(sizeof(std::complex<double>)) * f.amp.size());
}

bool is_field_container(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char magic[4] = {};
    in.read(magic, 4);
    return in.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0;
}

ComplexField read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    char header[64] = {};
    in.read(header, 64);
    if (in.gcount() != 64) throw ParseError(path.string() + ": truncated field header");
    if (std::memcmp(header, kMagic, 4) != 0)
        throw ParseError(path.string() + ": bad magic bytes; expected a field "
                                         "container, coefficient CSV, sampled CSV, or recipe");
    uint64_t version, nx, ny;
    double half_window, w0, lambdabar;
    std::memcpy(&version, header + 4, 8);
    std::memcpy(&nx, header + 12, 8);
    std::memcpy(&ny, header + 20, 8);
    std::memcpy(&half_window, header + 28, 8);
    std::memcpy(&w0, header + 36, 8);
    std::memcpy(&lambdabar, header + 44, 8);
    if (version != kFieldVersion)
        throw ParseError(path.string() + ": unsupported container version");
    if (nx < 2 || ny < 2 || nx > (1 << 20) || ny > (1 << 20))
        throw ParseError(path.string() + ": implausible sample counts");

    ComplexField f = make_field(make_grid(static_cast<int>(nx), static_cast<int>(ny), half_window),
                                make_frame(w0, lambdabar));
    in.read(reinterpret_cast<char*>(f.amp.data()),
            static_cast<std::streamsize>(sizeof(std::complex<double>)) * f.amp.size());
    if (in.gcount() != static_cast<std::streamsize>(sizeof(std::complex<double>)) * f.amp.size())
        throw ParseError(path.string() + ": truncated sample data");
    return f;
}

ComplexField read_field_csv(const std::filesystem::path& path,
                            const PhysicalFrame& frame) {
    auto in = open_text(path);
    std::string line;
    size_t lineno = 1;
    if (!std::getline(in, line) || strip(line) != "x,y,re,im")
        parse_fail(path, lineno, "expected header 'x,y,re,im'");

    std::vector<double> xs, ys;
    std::vector<std::complex<double>> vals;
    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        const auto tok = split(line, ',');
        if (tok.size() != 4) parse_fail(path, lineno, "expected 4 columns");
        xs.push_back(parse_double(path, lineno, tok[0]));
        ys.push_back(parse_double(path, lineno, tok[1]));
        vals.emplace_back(parse_double(path, lineno, tok[2]),
                          parse_double(path, lineno, tok[3]));
    }
    if (vals.empty()) throw ParseError(path.string() + ": no samples");

    std::vector<double> ux = xs, uy = ys;
    std::sort(ux.begin(), ux.end());
    ux.erase(std::unique(ux.begin(), ux.end()), ux.end());
    std::sort(uy.begin(), uy.end());
    uy.erase(std::unique(uy.begin(), uy.end()), uy.end());
    const size_t nx = ux.size(), ny = uy.size();
    if (nx < 2 || ny < 2 || nx * ny != vals.size())
        throw ParseError(path.string() + ": samples do not form a complete grid");
    const double dx = ux[1] - ux[0];
    for (size_t i = 1; i < nx; ++i)
        if (std::abs(ux[i] - ux[0] - i * dx) > 1e-9 * std::abs(dx))
            throw ParseError(path.string() + ": x samples are not uniformly spaced");
    const double dy = uy[1] - uy[0];
    for (size_t j = 1; j < ny; ++j)
        if (std::abs(uy[j] - uy[0] - j * dy) > 1e-9 * std::abs(dy))
            throw ParseError(path.string() + ": y samples are not uniformly spaced");
    if (std::abs(ux.front() + ux.back()) > 1e-9 * std::abs(dx) ||
        std::abs(uy.front() + uy.back()) > 1e-9 * std::abs(dy))
        throw ParseError(path.string() + ": grid is not centered on the axis");

    const double half_window = 0.5 * nx * dx / frame.w0;
    ComplexField f = make_field(make_grid(static_cast<int>(nx), static_cast<int>(ny), half_window),
                                frame);
    auto index_of = [](const std::vector<double>& u, double v, double du) {
        return static_cast<int>(std::llround((v - u[0]) / du));
    };
    for (size_t k = 0; k < vals.size(); ++k)
        f.amp(index_of(ux, xs[k], dx), index_of(uy, ys[k], dy)) = vals[k];
    return f;
}

void write_train_csv(const std::filesystem::path& path, const OpticalTrain& t,
                     const PhysicalFrame& frame) {
    auto out = create_text(path);
    const double z0 = frame.rayleigh_range();
    out << "kind,param1,param2,angle,offset_x,offset_y,position\n";
    double position = 0.0;
    for (const auto& e : t.elements) {
        double p1 = 0.0, p2 = 0.0, angle = 0.0;
        switch (e.kind) {
            case OpticalElement::Kind::SphericalLens:
                p1 = e.flat ? std::numeric_limits<double>::infinity() : e.radius / z0;
                p2 = e.refractive_index;
                break;
            case OpticalElement::Kind::CylindricalLens:
                p1 = e.flat ? std::numeric_limits<double>::infinity() : e.radius / z0;
                p2 = e.refractive_index;
                angle = e.axis_angle;
                break;
            case OpticalElement::Kind::FreeSpace:
                p1 = e.distance / z0;
                break;
            case OpticalElement::Kind::Parity:
                break;
        }
        out << to_string(e.kind) << "," << format_double(p1) << "," << format_double(p2)
            << "," << format_double(angle) << "," << format_double(e.offset_x / frame.w0)
            << "," << format_double(e.offset_y / frame.w0) << ","
            << format_double(position / z0) << "\n";
        if (e.kind == OpticalElement::Kind::FreeSpace) position += e.distance;
    }
}

void write_scan_csv(const std::filesystem::path& path, const IntensityScan& s) {
    auto out = create_text(path);
    out << "# compensator=" << to_string(s.compensator.kind);
    if (s.compensator.kind == CompensatorSetting::Kind::Custom)
        out << "," << format_double(s.compensator.phi_plus_prime) << ","
            << format_double(s.compensator.phi_minus_prime);
    out << "\n";
    out << "# engine=" << to_string(s.engine) << "\n";
    out << "# K_plus=" << s.phi_plus.size() << "\n";
    out << "# K_minus=" << s.phi_minus.size() << "\n";
    out << "phi_plus,phi_minus,delta_i\n";
    for (size_t i = 0; i < s.phi_plus.size(); ++i)
        for (size_t j = 0; j < s.phi_minus.size(); ++j)
            out << format_double(s.phi_plus[i]) << "," << format_double(s.phi_minus[j])
                << "," << format_double(s.values(i, j)) << "\n";
}

IntensityScan read_scan_csv(const std::filesystem::path& path) {
    auto in = open_text(path);
    IntensityScan s;
    std::string line;
    size_t lineno = 0;
    long k_plus = -1, k_minus = -1;
    bool have_comp = false, have_engine = false;

    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = strip(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto eq = t.find('=');
            if (eq == std::string::npos) continue;
            std::string key = strip(t.substr(1, eq - 1));
            std::string val = strip(t.substr(eq + 1));
            if (key == "compensator") {
                const auto parts = split(val, ',');
                if (parts[0] == "identity")
                    s.compensator = CompensatorSetting::identity();
                else if (parts[0] == "minus-identity")
                    s.compensator = CompensatorSetting::minus_identity();
                else if (parts[0] == "custom" && parts.size() == 3)
                    s.compensator = CompensatorSetting::custom(
                        parse_double(path, lineno, parts[1]),
                        parse_double(path, lineno, parts[2]));
                else
                    parse_fail(path, lineno, "bad compensator tag '" + val + "'");
                have_comp = true;
            } else if (key == "engine") {
                if (val == "analytic")
                    s.engine = Engine::Analytic;
                else if (val == "kernel")
                    s.engine = Engine::Kernel;
                else if (val == "train")
                    s.engine = Engine::LensTrain;
                else
                    parse_fail(path, lineno, "bad engine tag '" + val + "'");
                have_engine = true;
            } else if (key == "K_plus") {
                k_plus = parse_int(path, lineno, val);
            } else if (key == "K_minus") {
                k_minus = parse_int(path, lineno, val);
            }
            continue;
        }
        if (t == "phi_plus,phi_minus,delta_i") break;
        parse_fail(path, lineno, "expected header 'phi_plus,phi_minus,delta_i'");
    }
    if (!have_comp || !have_engine || k_plus < 1 || k_minus < 1)
        throw ParseError(path.string() +
                         ": missing scan metadata (compensator/engine/K_plus/K_minus)");

    std::vector<double> pp, pm, vals;
    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        const auto tok = split(line, ',');
        if (tok.size() != 3) parse_fail(path, lineno, "expected 3 columns");
        pp.push_back(parse_double(path, lineno, tok[0]));
        pm.push_back(parse_double(path, lineno, tok[1]));
        vals.push_back(parse_double(path, lineno, tok[2]));
    }
    if (static_cast<long>(vals.size()) != k_plus * k_minus)
        throw ParseError(path.string() + ": expected " + std::to_string(k_plus * k_minus) +
                         " rows, got " + std::to_string(vals.size()));

    s.phi_plus.resize(k_plus);
    s.phi_minus.resize(k_minus);
    s.values.resize(k_plus, k_minus);
    for (long i = 0; i < k_plus; ++i) s.phi_plus[i] = pp[i * k_minus];
    for (long j = 0; j < k_minus; ++j) s.phi_minus[j] = pm[j];
    for (long i = 0; i < k_plus; ++i)
        for (long j = 0; j < k_minus; ++j) {
            const size_t k = i * k_minus + j;
            if (std::abs(pp[k] - s.phi_plus[i]) > 1e-9 ||
                std::abs(pm[k] - s.phi_minus[j]) > 1e-9)
                throw ParseError(path.string() + ": rows are not phi_plus-major ordered");
            s.values(i, j) = vals[k];
        }
    return s;
}

namespace {

std::map<std::string, std::string> read_kv(const std::filesystem::path& path) {
    auto in = open_text(path);
    std::map<std::string, std::string> kv;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) parse_fail(path, lineno, "expected key=value");
        kv[strip(t.substr(0, eq))] = strip(t.substr(eq + 1));
    }
    return kv;
}

double kv_double(const std::filesystem::path& path,
                 const std::map<std::string, std::string>& kv, const std::string& key,
                 double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    return parse_double(path, 0, it->second);
}

std::vector<double> kv_list(const std::filesystem::path& path,
                            const std::map<std::string, std::string>& kv,
                            const std::string& key, std::vector<double> fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::vector<double> out;
    for (const auto& tok : split(it->second, ':')) out.push_back(parse_double(path, 0, tok));
    return out;
}

}  // namespace

BeamRecipe read_recipe(const std::filesystem::path& path) {
    const auto kv = read_kv(path);
    auto it = kv.find("type");
    if (it == kv.end()) throw ParseError(path.string() + ": recipe is missing 'type='");
    const std::string& type = it->second;

    if (type == "astigmatic") {
        AstigmaticGaussian r;
        r.wx = kv_double(path, kv, "wx", r.wx);
        r.wy = kv_double(path, kv, "wy", r.wy);
        r.tilt = kv_double(path, kv, "tilt", r.tilt);
        return r;
    }
    if (type == "necklace") {
        Necklace r;
        r.poles = static_cast<int>(kv_double(path, kv, "poles", r.poles));
        r.radius = kv_double(path, kv, "r0", r.radius);
        r.lobe_width = kv_double(path, kv, "lobe_width", r.lobe_width);
        return r;
    }
    if (type == "multiring") {
        Multiring r;
        r.radii = kv_list(path, kv, "radii", r.radii);
        r.amplitudes = kv_list(path, kv, "amplitudes", r.amplitudes);
        r.ellipticity = kv_double(path, kv, "ellipticity", r.ellipticity);
        r.ring_width = kv_double(path, kv, "ring_width", r.ring_width);
        return r;
    }
    if (type == "coefficients") {
        auto p = kv.find("path");
        if (p == kv.end()) throw ParseError(path.string() + ": coefficients recipe needs 'path='");
        CoefficientList cl;
        cl.spectrum = read_spectrum_csv(path.parent_path() / p->second, PhysicalFrame{});
        return cl;
    }
    if (type == "field") {
        auto p = kv.find("path");
        if (p == kv.end()) throw ParseError(path.string() + ": field recipe needs 'path='");
        return SampledField{path.parent_path() / p->second};
    }
    throw ParseError(path.string() + ": unknown recipe type '" + type +
                     "'; expected astigmatic, necklace, multiring, coefficients or field");
}

void write_report_json(const std::filesystem::path& path, const ReconstructionReport& r) {
    nlohmann::json j;
    j["residual"] = r.residual;
    j["clamped_mass"] = r.clamped_mass;
    j["sampling_ok"] = r.sampling_ok;
    j["K_plus"] = r.k_plus;
    j["K_minus"] = r.k_minus;
    j["max_order"] = r.max_order;
    auto out = create_text(path);
    out << j.dump(2) << "\n";
}

void write_csv_as_table(const std::filesystem::path& csv,
                        const std::filesystem::path& table) {
    auto in = open_text(csv);
    auto out = create_text(table);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            out << line << "\n";
            continue;
        }
        for (auto& c : line)
            if (c == ',') c = ' ';
        out << line << "\n";
    }
}

}  // namespace io
}  // namespace modespec
