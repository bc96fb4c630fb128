#include "modespec/fractional.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fft_engine.hpp"
#include "modespec/errors.hpp"

namespace modespec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kFourPi = 4.0 * kPi;

// |sin(angle/2)| < 1e-6 marks the singular kernel; in angle terms the
// reduced value sits within 2e-6 of 0, 2pi or 4pi.
constexpr double kDegenerate = 2e-6;

double reduce_angle(double phi) {
    double r = std::fmod(phi, kFourPi);
    if (r < 0.0) r += kFourPi;
    return r;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

struct AxisOp {
    enum class Mode { Identity, Flip, Transform };
    Mode mode = Mode::Identity;
    int n = 0;
    int padded = 0;
    Eigen::VectorXcd chirp;      // pre/post multiplier q_j
    Eigen::VectorXcd kernel_fft; // DFT of the circular Bluestein chirp
    std::complex<double> scale;  // prefactor, phase normalization, 1/padded
};

AxisOp make_axis_op(double phi, int n, double dx, double w0, double half_window) {
    AxisOp op;
    op.n = n;
    const double r = reduce_angle(phi);
    if (r < kDegenerate || kFourPi - r < kDegenerate) {
        op.mode = AxisOp::Mode::Identity;
        return op;
    }
    if (std::abs(r - kTwoPi) < kDegenerate) {
        op.mode = AxisOp::Mode::Flip;
        return op;
    }
    op.mode = AxisOp::Mode::Transform;

    const double c = std::cos(0.5 * r);
    const double s = std::sin(0.5 * r);
    const double window = half_window * w0;

    const double chirp_ratio = std::abs(c / s) * window * dx / (w0 * w0);
    if (chirp_ratio >= 0.5 * kPi) {
        std::ostringstream msg;
        msg << "kernel plan: chirp sampling rule violated at angle " << phi
            << ": |cot(phi/2)|*window*dx/w0^2 = " << chirp_ratio << " >= pi/2; "
            << "enlarge the grid or pad the field";
        throw GridError(msg.str());
    }

    const double theta = 2.0 * dx * dx / (w0 * w0 * s);
    const double m0 = 0.5 * (n - 1);
    op.chirp.resize(n);
    for (int j = 0; j < n; ++j) {
        const double u = j - m0;
        op.chirp[j] = std::polar(1.0, 0.5 * theta * (c - 1.0) * u * u);
    }

    op.padded = next_pow2(2 * n - 1);
    Eigen::VectorXcd b(op.padded);
    for (int l = 0; l < op.padded; ++l) {
        const double ll = std::min(l, op.padded - l);
        b[l] = std::polar(1.0, 0.5 * theta * ll * ll);
    }
    detail::fft_many_inplace(b.data(), op.padded, 1, true);
    op.kernel_fft = std::move(b);

    // Raw kernel prefactor (branch 1/sqrt(i) = e^{-i pi/4}) divided by the
    // per-axis ground-mode phase so eigenphases follow the (m+n)/2, (m-n)/2
    // convention with no zero-point term.
    const std::complex<double> pref =
        std::polar(1.0 / std::sqrt(kPi * w0 * w0 * std::abs(s)), -0.25 * kPi);
    std::complex<double> ground = std::polar(1.0, -0.25 * r);
    if (s < 0.0) ground *= std::complex<double>(0.0, 1.0);
    op.scale = pref * dx / ground / static_cast<double>(op.padded);
    return op;
}

// Transform along the contiguous axis (axis 0) of a column-major matrix.
Eigen::MatrixXcd apply_axis(const AxisOp& op, const Eigen::MatrixXcd& in) {
    const int n = op.n;
    const auto m = in.cols();
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(op.padded, m);
    for (Eigen::Index j = 0; j < m; ++j)
        w.col(j).head(n) = op.chirp.cwiseProduct(in.col(j));
    detail::fft_many_inplace(w.data(), op.padded, static_cast<int>(m), true);
    w = op.kernel_fft.asDiagonal() * w;
    detail::fft_many_inplace(w.data(), op.padded, static_cast<int>(m), false);
    Eigen::MatrixXcd out(n, m);
    for (Eigen::Index j = 0; j < m; ++j)
        out.col(j) = op.scale * op.chirp.cwiseProduct(w.col(j).head(n));
    return out;
}

}  // namespace

struct KernelPlan::Impl {
    Kind kind;
    double angle;
    GridSpec grid;
    PhysicalFrame frame;
    AxisOp x_op;
    AxisOp y_op;
};

KernelPlan::KernelPlan(Kind kind, double angle, const GridSpec& grid,
                       const PhysicalFrame& frame)
    : impl_(std::make_unique<Impl>()) {
    impl_->kind = kind;
    impl_->angle = angle;
    impl_->grid = grid;
    impl_->frame = frame;
    const double y_angle = (kind == Kind::SPlus) ? angle : -angle;
    impl_->x_op = make_axis_op(angle, grid.samples_x, grid.spacing_x(frame),
                               frame.w0, grid.half_window);
    impl_->y_op = make_axis_op(y_angle, grid.samples_y, grid.spacing_y(frame),
                               frame.w0, grid.half_window);
}

KernelPlan::~KernelPlan() = default;
KernelPlan::KernelPlan(KernelPlan&&) noexcept = default;
KernelPlan& KernelPlan::operator=(KernelPlan&&) noexcept = default;

KernelPlan::Kind KernelPlan::kind() const { return impl_->kind; }
double KernelPlan::angle() const { return impl_->angle; }

ComplexField KernelPlan::apply(const ComplexField& field) const {
    if (!(field.grid == impl_->grid) || !field.frame.compatible(impl_->frame))
        throw MismatchError("kernel plan built for a different grid or frame");

    ComplexField out = field;
    switch (impl_->x_op.mode) {
        case AxisOp::Mode::Identity:
            break;
        case AxisOp::Mode::Flip:
            out.amp = out.amp.colwise().reverse().eval();
            break;
        case AxisOp::Mode::Transform:
            out.amp = apply_axis(impl_->x_op, out.amp);
            break;
    }
    switch (impl_->y_op.mode) {
        case AxisOp::Mode::Identity:
            break;
        case AxisOp::Mode::Flip:
            out.amp = out.amp.rowwise().reverse().eval();
            break;
        case AxisOp::Mode::Transform:
            out.amp = apply_axis(impl_->y_op, out.amp.transpose()).transpose();
            break;
    }
    return out;
}

ComplexField apply_s_plus(const ComplexField& field, double phi_plus) {
    return KernelPlan(KernelPlan::Kind::SPlus, phi_plus, field.grid, field.frame).apply(field);
}

ComplexField apply_s_minus(const ComplexField& field, double phi_minus) {
    return KernelPlan(KernelPlan::Kind::SMinus, phi_minus, field.grid, field.frame).apply(field);
}

}  // namespace modespec
