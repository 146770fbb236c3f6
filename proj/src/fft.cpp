#include "tomofeat/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace tomofeat {

namespace {

// FFTW's planner is not reentrant; execution on new arrays is.
std::mutex planner_mutex;

}  // namespace

std::vector<cplx> dft(std::span<const cplx> x, bool inverse) {
    const int n = static_cast<int>(x.size());
    std::vector<cplx> out(x.size());
    if (n == 0) return out;
    std::vector<cplx> in(x.begin(), x.end());
    auto* pin = reinterpret_cast<fftw_complex*>(in.data());
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, pin, pout, inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fftw: planning failed");
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

std::size_t fast_length(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t full = a.size() + b.size() - 1;
    const std::size_t n = fast_length(full);
    std::vector<cplx> fa(n), fb(n);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
    auto A = dft(fa);
    const auto B = dft(fb);
    for (std::size_t i = 0; i < n; ++i) A[i] *= B[i];
    const auto c = dft(A, true);
    std::vector<double> out(full);
    for (std::size_t i = 0; i < full; ++i) out[i] = c[i].real() / static_cast<double>(n);
    return out;
}

}  // namespace tomofeat
