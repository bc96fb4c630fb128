#include "modespec/su2.hpp"

#include <cmath>
#include <complex>
#include <map>

#include "modespec/errors.hpp"

namespace modespec {

namespace {

using cd = std::complex<double>;

std::map<ModeIndex, int> index_positions(int max_order) {
    std::map<ModeIndex, int> pos;
    int k = 0;
    for (const ModeIndex m : modes_up_to(max_order)) pos[m] = k++;
    return pos;
}

// Ladder matrix elements of (a_x^dag a_y) within one total-order block:
// <nx+1, ny-1 | a_x^dag a_y | nx, ny> = sqrt((nx+1) ny).
void add_exchange(Eigen::MatrixXcd& m, const std::map<ModeIndex, int>& pos,
                  int max_order, cd up_factor, cd down_factor) {
    for (const auto& [idx, i] : pos) {
        if (idx.ny >= 1) {
            const ModeIndex raised{idx.nx + 1, idx.ny - 1};
            const double amp = std::sqrt((idx.nx + 1.0) * idx.ny);
            m(pos.at(raised), i) += up_factor * amp;
        }
        if (idx.nx >= 1) {
            const ModeIndex lowered{idx.nx - 1, idx.ny + 1};
            const double amp = std::sqrt(idx.nx * (idx.ny + 1.0));
            m(pos.at(lowered), i) += down_factor * amp;
        }
    }
    (void)max_order;
}

}  // namespace

OperatorMatrix generator_matrix(Generator kind, int max_order) {
    if (max_order < 0) throw InvalidArgument("max_order must be nonnegative");
    const auto pos = index_positions(max_order);
    const int dim = static_cast<int>(pos.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);

    switch (kind) {
        case Generator::N:
            for (const auto& [idx, i] : pos) m(i, i) = 0.5 * idx.order();
            break;
        case Generator::Lx:
            for (const auto& [idx, i] : pos) m(i, i) = 0.5 * (idx.nx - idx.ny);
            break;
        case Generator::Ly:
            // (a_x^dag a_y + a_y^dag a_x) / 2
            add_exchange(m, pos, max_order, cd(0.5, 0.0), cd(0.5, 0.0));
            break;
        case Generator::Lz:
            // (a_x^dag a_y - a_y^dag a_x) / (2i)
            add_exchange(m, pos, max_order, cd(0.0, -0.5), cd(0.0, 0.5));
            break;
    }
    return OperatorMatrix{kind, max_order, std::move(m)};
}

ModeSpectrum rotate_spectrum(const ModeSpectrum& s, double theta, double phi, double angle) {
    const int max_order = s.max_order();
    ModeSpectrum out;
    out.frame = s.frame;

    const double ux = std::sin(theta) * std::cos(phi);
    const double uy = std::sin(theta) * std::sin(phi);
    const double uz = std::cos(theta);

    // Per total-order block: G = u_r . L restricted to the block, then
    // exp(-i*angle*G) by Hermitian eigendecomposition.
    for (int order = 0; order <= max_order; ++order) {
        std::vector<ModeIndex> block;
        for (int nx = 0; nx <= order; ++nx) block.push_back({nx, order - nx});
        const int dim = order + 1;

        Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) {
            const ModeIndex idx = block[i];
            g(i, i) += ux * 0.5 * (idx.nx - idx.ny);
            if (idx.ny >= 1) {
                const double amp = std::sqrt((idx.nx + 1.0) * idx.ny);
                // raised state is block[i+1] (nx+1)
                g(i + 1, i) += uy * cd(0.5, 0.0) * amp + uz * cd(0.0, -0.5) * amp;
            }
            if (idx.nx >= 1) {
                const double amp = std::sqrt(idx.nx * (idx.ny + 1.0));
                g(i - 1, i) += uy * cd(0.5, 0.0) * amp + uz * cd(0.0, 0.5) * amp;
            }
        }

        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
        bool any = false;
        for (int i = 0; i < dim; ++i) {
            auto it = s.entries.find(block[i]);
            if (it != s.entries.end()) {
                c[i] = it->second;
                any = true;
            }
        }
        if (!any) continue;

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
        const Eigen::VectorXcd phase =
            (cd(0.0, -angle) * es.eigenvalues().cast<cd>().array()).exp();
        const Eigen::VectorXcd rotated =
            es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint() * c;
        for (int i = 0; i < dim; ++i) out.entries[block[i]] = rotated[i];
    }
    return out;
}

ModeSpectrum gouy_advance(const ModeSpectrum& s, double angle) {
    ModeSpectrum out;
    out.frame = s.frame;
    for (const auto& [idx, c] : s.entries)
        out.entries[idx] = c * std::polar(1.0, -angle * 0.5 * idx.order());
    return out;
}

}  // namespace modespec
