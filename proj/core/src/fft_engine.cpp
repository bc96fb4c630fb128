#include "fft_engine.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace modespec::detail {

namespace {

// FFTW plan creation is not thread safe; execution with new arrays is.
// Plans are created once per shape with FFTW_UNALIGNED so they accept any
// caller buffer, and cached for the life of the process.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

using Key = std::tuple<int, int, int, int>;  // n0, n1 (0 for 1D), howmany, sign

fftw_plan get_plan(int n0, int n1, int howmany, int sign) {
    static std::map<Key, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    const Key key{n0, n1, howmany, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const size_t total = static_cast<size_t>(n0) * (n1 > 0 ? n1 : 1) * howmany;
    fftw_complex* scratch = fftw_alloc_complex(total);
    fftw_plan plan;
    if (n1 == 0) {
        plan = fftw_plan_many_dft(1, &n0, howmany, scratch, nullptr, 1, n0,
                                  scratch, nullptr, 1, n0, sign,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    } else {
        // column-major (n0 rows, n1 cols) == row-major (n1, n0)
        plan = fftw_plan_dft_2d(n1, n0, scratch, scratch, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    fftw_free(scratch);
    cache.emplace(key, plan);
    return plan;
}

}  // namespace

void fft_many_inplace(std::complex<double>* data, int n, int howmany, bool forward) {
    fftw_plan plan = get_plan(n, 0, howmany, forward ? FFTW_FORWARD : FFTW_BACKWARD);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

void fft2_inplace(Eigen::MatrixXcd& m, bool forward) {
    fftw_plan plan = get_plan(static_cast<int>(m.rows()), static_cast<int>(m.cols()), 1,
                              forward ? FFTW_FORWARD : FFTW_BACKWARD);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(m.data()),
                     reinterpret_cast<fftw_complex*>(m.data()));
}

}  // namespace modespec::detail
