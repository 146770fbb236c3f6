#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tomofeat {

using cplx = std::complex<double>;

/// Unnormalized DFT, X_k = sum_n x_n exp(-+ 2 pi i k n / N) (sign + for inverse).
std::vector<cplx> dft(std::span<const cplx> x, bool inverse = false);

/// Smallest power of two >= n.
std::size_t fast_length(std::size_t n);

/// Full linear convolution (length a.size() + b.size() - 1) through zero-padded FFTs.
std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b);

}  // namespace tomofeat
