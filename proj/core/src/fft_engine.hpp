#pragma once

#include <Eigen/Dense>
#include <complex>

namespace modespec::detail {

/// In-place DFT of `howmany` consecutive contiguous blocks of length n.
/// Backward transforms are unnormalized (caller divides by n).
void fft_many_inplace(std::complex<double>* data, int n, int howmany, bool forward);

/// In-place 2D DFT over both dimensions of a column-major matrix.
/// Backward transforms are unnormalized.
void fft2_inplace(Eigen::MatrixXcd& m, bool forward);

}  // namespace modespec::detail
