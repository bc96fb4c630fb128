#include "modespec/modes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "modespec/errors.hpp"

namespace modespec {

std::vector<ModeIndex> modes_up_to(int max_order) {
    std::vector<ModeIndex> out;
    out.reserve((max_order + 1) * (max_order + 2) / 2);
    for (int order = 0; order <= max_order; ++order)
        for (int nx = 0; nx <= order; ++nx)
            out.push_back({nx, order - nx});
    return out;
}

int ModeSpectrum::max_order() const {
    int m = 0;
    for (const auto& [idx, c] : entries) m = std::max(m, idx.order());
    return m;
}

double ModeSpectrum::total_weight() const {
    double s = 0.0;
    for (const auto& [idx, c] : entries) s += std::norm(c);
    return s;
}

bool ModeSpectrum::is_normalized(double tol) const {
    return std::abs(total_weight() - 1.0) <= tol;
}

void ModeSpectrum::normalize() {
    const double t = total_weight();
    if (!(t > 0.0)) throw InvalidArgument("cannot normalize an empty spectrum");
    const double s = 1.0 / std::sqrt(t);
    for (auto& [idx, c] : entries) c *= s;
}

double WeightSpectrum::total() const {
    double s = 0.0;
    for (const auto& [idx, w] : entries) s += w;
    return s;
}

double WeightSpectrum::at(ModeIndex m) const {
    auto it = entries.find(m);
    return it == entries.end() ? 0.0 : it->second;
}

bool WeightSpectrum::insert_clamped(ModeIndex m, double value, double tol) {
    if (value >= 0.0) {
        entries[m] = value;
        return true;
    }
    clamped_mass += -value;
    entries[m] = 0.0;
    return value >= -tol;
}

WeightSpectrum weights_of(const ModeSpectrum& s) {
    WeightSpectrum w;
    for (const auto& [idx, c] : s.entries) w.entries[idx] = std::norm(c);
    return w;
}

void check_mode_resolution(const GridSpec& grid, const PhysicalFrame& frame,
                           int max_order) {
    if (max_order < 0) throw InvalidArgument("max_order must be nonnegative");
    const double per_w0_x = frame.w0 / grid.spacing_x(frame);
    const double per_w0_y = frame.w0 / grid.spacing_y(frame);
    const double need_sampling = 1.746 * std::sqrt(2.0 * max_order + 1.0);
    const double need_window = std::sqrt(max_order + 0.5) + 2.5;
    std::ostringstream msg;
    if (std::min(per_w0_x, per_w0_y) < need_sampling) {
        msg << "grid too coarse for mode order " << max_order
            << ": sampling rule requires w0/spacing >= " << need_sampling
            << " (have " << std::min(per_w0_x, per_w0_y) << ")";
        throw GridError(msg.str());
    }
    if (grid.half_window < need_window) {
        msg << "grid window too small for mode order " << max_order
            << ": window rule requires half_window >= " << need_window
            << " w0 (have " << grid.half_window << ")";
        throw GridError(msg.str());
    }
}

namespace detail {

Eigen::MatrixXd hermite_stack(int n_max, const Eigen::VectorXd& coords, double w0) {
    // Orthonormal 1D mode functions via the normalized three-term
    // recurrence; bounded values, so no overflow at any order.
    const int n = static_cast<int>(coords.size());
    Eigen::MatrixXd h(n_max + 1, n);
    const double root = std::pow(2.0 / (std::numbers::pi * w0 * w0), 0.25);
    for (int i = 0; i < n; ++i) {
        const double xi = std::numbers::sqrt2 * coords[i] / w0;
        h(0, i) = root * std::exp(-0.5 * xi * xi);
        if (n_max >= 1) h(1, i) = std::numbers::sqrt2 * xi * h(0, i);
        for (int k = 2; k <= n_max; ++k)
            h(k, i) = std::sqrt(2.0 / k) * xi * h(k - 1, i) -
                      std::sqrt((k - 1.0) / k) * h(k - 2, i);
    }
    return h;
}

}  // namespace detail

namespace {

Eigen::VectorXd axis_coords_x(const GridSpec& g, const PhysicalFrame& f) {
    Eigen::VectorXd v(g.samples_x);
    for (int i = 0; i < g.samples_x; ++i) v[i] = g.x(i, f);
    return v;
}

Eigen::VectorXd axis_coords_y(const GridSpec& g, const PhysicalFrame& f) {
    Eigen::VectorXd v(g.samples_y);
    for (int i = 0; i < g.samples_y; ++i) v[i] = g.y(i, f);
    return v;
}

}  // namespace

ComplexField eval_hg(ModeIndex index, const PhysicalFrame& frame, const GridSpec& grid) {
    if (index.nx < 0 || index.ny < 0)
        throw InvalidArgument("mode indices must be nonnegative");
    check_mode_resolution(grid, frame, index.order());
    const Eigen::MatrixXd hx = detail::hermite_stack(index.nx, axis_coords_x(grid, frame), frame.w0);
    const Eigen::MatrixXd hy = detail::hermite_stack(index.ny, axis_coords_y(grid, frame), frame.w0);
    ComplexField f = make_field(grid, frame);
    f.amp = (hx.row(index.nx).transpose() * hy.row(index.ny)).cast<std::complex<double>>();
    return f;
}

ComplexField eval_lg(int p, int l, const PhysicalFrame& frame, const GridSpec& grid) {
    if (p < 0) throw InvalidArgument("radial index p must be nonnegative");
    check_mode_resolution(grid, frame, 2 * p + std::abs(l));
    const int al = std::abs(l);
    // log-scaled normalization: sqrt(2 p! / (pi (p+|l|)!)) / w0
    const double log_norm = 0.5 * (std::log(2.0 / std::numbers::pi) +
                                   std::lgamma(p + 1.0) - std::lgamma(p + al + 1.0));
    const double w0 = frame.w0;

    ComplexField f = make_field(grid, frame);
    for (int iy = 0; iy < grid.samples_y; ++iy) {
        const double y = grid.y(iy, frame);
        for (int ix = 0; ix < grid.samples_x; ++ix) {
            const double x = grid.x(ix, frame);
            const double r2 = (x * x + y * y) / (w0 * w0);
            const double t = 2.0 * r2;
            // forward Laguerre recurrence L_k^{al}(t)
            double lk = 1.0, lkm1 = 0.0;
            for (int k = 1; k <= p; ++k) {
                const double lkp = ((2.0 * k - 1.0 + al - t) * lk - (k - 1.0 + al) * lkm1) / k;
                lkm1 = lk;
                lk = lkp;
            }
            double radial;
            if (r2 > 0.0)
                radial = std::exp(log_norm + 0.5 * al * std::log(2.0 * r2) - r2);
            else
                radial = (al == 0) ? std::exp(log_norm) : 0.0;
            const double phi = std::atan2(y, x);
            f.amp(ix, iy) = std::polar(radial * lk / w0, l * phi);
        }
    }
    return f;
}

DecompositionResult decompose(const ComplexField& field, int max_order) {
    check_mode_resolution(field.grid, field.frame, max_order);
    const Eigen::MatrixXd hx =
        detail::hermite_stack(max_order, axis_coords_x(field.grid, field.frame), field.frame.w0);
    const Eigen::MatrixXd hy =
        detail::hermite_stack(max_order, axis_coords_y(field.grid, field.frame), field.frame.w0);

    // C(a,b) = <u_ab, psi> = sum_ij h_a(x_i) h_b(y_j) psi_ij dA
    const Eigen::MatrixXcd coeff =
        hx * field.amp * hy.transpose() * field.cell_area();

    DecompositionResult out;
    out.spectrum.frame = field.frame;
    for (const ModeIndex m : modes_up_to(max_order))
        out.spectrum.entries[m] = coeff(m.nx, m.ny);

    // residual ||psi - sum C u||
    Eigen::MatrixXcd recon = Eigen::MatrixXcd::Zero(field.grid.samples_x, field.grid.samples_y);
    for (const auto& [m, c] : out.spectrum.entries)
        recon.noalias() += c * (hx.row(m.nx).transpose() * hy.row(m.ny)).cast<std::complex<double>>();
    out.residual = std::sqrt((field.amp - recon).squaredNorm() * field.cell_area());
    return out;
}

ComplexField synthesize(const ModeSpectrum& spectrum, const GridSpec& grid) {
    const int max_order = spectrum.max_order();
    check_mode_resolution(grid, spectrum.frame, max_order);
    const Eigen::MatrixXd hx =
        detail::hermite_stack(max_order, axis_coords_x(grid, spectrum.frame), spectrum.frame.w0);
    const Eigen::MatrixXd hy =
        detail::hermite_stack(max_order, axis_coords_y(grid, spectrum.frame), spectrum.frame.w0);
    Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(max_order + 1, max_order + 1);
    for (const auto& [m, c] : spectrum.entries) coeff(m.nx, m.ny) = c;
    ComplexField f = make_field(grid, spectrum.frame);
    f.amp = hx.transpose() * coeff * hy;
    return f;
}

}  // namespace modespec
