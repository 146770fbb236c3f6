#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "tomofeat/fft.hpp"
#include "tomofeat/filters.hpp"
#include "tomofeat/grid.hpp"

namespace tomofeat {

/// Discrete Radon transform R_Theta on a pixel grid and its exact transpose.
///
/// Each line integral is a composite trapezoid rule along the ray with step
/// equal to the pixel pitch; the image is sampled by bilinear interpolation
/// and is zero outside the grid. When the number of interpolation weights is
/// small enough the operator is stored as a sparse matrix (and its transpose),
/// otherwise weights are recomputed on every application. Both paths produce
/// identical values.
class RadonOperator {
public:
    RadonOperator(const Grid& grid, const SamplingSpec& spec, std::size_t cache_limit = 24'000'000);
    ~RadonOperator();
    RadonOperator(RadonOperator&&) noexcept;
    RadonOperator& operator=(RadonOperator&&) noexcept;

    const Grid& grid() const { return grid_; }
    const SamplingSpec& spec() const { return spec_; }
    bool cached() const;

    /// Single channel: img has grid.size() values, sino has n_angles * n_samples.
    void apply(std::span<const double> img, std::span<double> sino) const;
    void apply_adjoint(std::span<const double> sino, std::span<double> img) const;

    Sinogram forward(const Image& img) const;
    Image adjoint(const Sinogram& sino) const;

    /// Calls fn(pixel_index, weight) for every interpolation weight of ray (j, k).
    template <class Fn>
    void visit_ray(std::size_t j, std::size_t k, Fn&& fn) const;

private:
    struct Matrix;
    Grid grid_;
    SamplingSpec spec_;
    std::vector<double> cos_, sin_;
    long half_steps_;
    std::unique_ptr<Matrix> matrix_;
};

Sinogram forward(const Image& img, const SamplingSpec& spec);
Image adjoint(const Sinogram& sino, const Grid& grid);

/// Quadrature of the continuous backprojection over the full circle:
/// (2 pi / |Theta|) sum_j g(phi_j, <x, theta_j>), linear interpolation in s.
Image backproject(const Sinogram& sino, const Grid& grid);

enum class ConvolutionMethod { automatic, direct, fft };

/// Per-angle, per-channel convolution in s scaled by the s-step. A 2-channel
/// filter applied to 1-channel data yields 2 channels; a 1-channel filter is
/// applied to each data channel.
Sinogram convolve_s(const Sinogram& sino, const DataFilter& filt,
                    ConvolutionMethod method = ConvolutionMethod::automatic);

/// Unitary transform along s, (2 pi)^(-1/2) sum_l g(s_l) exp(-i omega s_l) ds,
/// on the 2 N_s + 1 frequencies omega_k = 2 pi k / ((2 N_s + 1) ds), |k| <= N_s.
struct Spectrum {
    SamplingSpec spec;
    std::size_t channels = 1;
    std::vector<double> omegas;
    std::vector<cplx> values;  // [channel][angle][frequency]

    cplx& at(std::size_t c, std::size_t j, std::size_t k) {
        return values[(c * spec.n_angles() + j) * omegas.size() + k];
    }
    cplx at(std::size_t c, std::size_t j, std::size_t k) const {
        return values[(c * spec.n_angles() + j) * omegas.size() + k];
    }
    double domega() const;
};

Spectrum fourier_s(const Sinogram& sino);
Sinogram inverse_fourier_s(const Spectrum& spec);

template <class Fn>
void RadonOperator::visit_ray(std::size_t j, std::size_t k, Fn&& fn) const {
    const double h = grid_.pitch();
    const double e = grid_.extent;
    const long n = static_cast<long>(grid_.n);
    const double s = spec_.offset(k);
    const double c = cos_[j], sn = sin_[j];
    // Point at step t: x = s c - t sn, y = s sn + t c. Only points with
    // fractional pixel coordinates in (-1, n) in both axes carry weight.
    const double x0 = (s * c + e) / h, y0 = (s * sn + e) / h;
    const double dx = -sn, dy = c;  // per step, in pixels
    double lo = -static_cast<double>(half_steps_), hi = static_cast<double>(half_steps_);
    auto clip = [&](double p0, double dp) {
        if (std::abs(dp) < 1e-14) {
            if (p0 <= -1.0 || p0 >= static_cast<double>(n)) lo = 1.0, hi = 0.0;
            return;
        }
        double a = (-1.0 - p0) / dp, b = (static_cast<double>(n) - p0) / dp;
        if (a > b) std::swap(a, b);
        lo = std::max(lo, a);
        hi = std::min(hi, b);
    };
    clip(x0, dx);
    clip(y0, dy);
    if (lo > hi) return;
    const long kmin = static_cast<long>(std::floor(lo)), kmax = static_cast<long>(std::ceil(hi));
    for (long t = kmin; t <= kmax; ++t) {
        const double fc = x0 + static_cast<double>(t) * dx;
        const double fr = y0 + static_cast<double>(t) * dy;
        const double flc = std::floor(fc), flr = std::floor(fr);
        const long c0 = static_cast<long>(flc), r0 = static_cast<long>(flr);
        if (c0 < -1 || c0 >= n || r0 < -1 || r0 >= n) continue;
        const double ax = fc - flc, ay = fr - flr;
        const double w00 = (1.0 - ax) * (1.0 - ay) * h, w01 = ax * (1.0 - ay) * h;
        const double w10 = (1.0 - ax) * ay * h, w11 = ax * ay * h;
        const bool c0in = c0 >= 0, c1in = c0 + 1 < n, r0in = r0 >= 0, r1in = r0 + 1 < n;
        if (r0in && c0in && w00 != 0.0) fn(static_cast<std::size_t>(r0 * n + c0), w00);
        if (r0in && c1in && w01 != 0.0) fn(static_cast<std::size_t>(r0 * n + c0 + 1), w01);
        if (r1in && c0in && w10 != 0.0) fn(static_cast<std::size_t>((r0 + 1) * n + c0), w10);
        if (r1in && c1in && w11 != 0.0) fn(static_cast<std::size_t>((r0 + 1) * n + c0 + 1), w11);
    }
}

}  // namespace tomofeat
