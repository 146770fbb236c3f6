#include "tomofeat/fbp.hpp"

#include <numbers>
#include <stdexcept>

#include "tomofeat/fft.hpp"
#include "tomofeat/xform.hpp"

namespace tomofeat {

Sinogram filter_frequency(const Sinogram& sino, const FbpFilter& filt, std::size_t upsample) {
    filt.validate();
    if (sino.channels() != 1) throw std::invalid_argument("fbp: expects single-channel data");
    if (upsample == 0) throw std::invalid_argument("fbp: upsample must be >= 1");
    const std::size_t ns = sino.n_samples(), m = sino.n_angles();
    const std::size_t n = fast_length(2 * ns);
    const double ds = sino.spec().pitch();
    std::vector<double> omega(n);
    for (std::size_t k = 0; k < n; ++k) {
        const long kk = k < (n + 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
        omega[k] = 2.0 * std::numbers::pi * static_cast<double>(kk) / (static_cast<double>(n) * ds);
    }
    const std::size_t out_ch = filt.channels();
    const auto& sp = sino.spec();
    // the filtered rows are resampled at pitch ds / upsample by zero padding the spectrum
    const SamplingSpec out_spec(sp.bandwidth(), sp.n_angles_full(), sp.n_radial() * upsample, sp.radial_halfwidth(),
                                sp.angle_subset());
    const std::size_t nu = n * upsample, ns_out = out_spec.n_samples();
    Sinogram out(out_spec, out_ch);
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < m; ++j) {
        const double phi = sino.spec().angle(j);
        std::vector<cplx> buf(n);
        const auto g = sino.row(0, j);
        for (std::size_t k = 0; k < ns; ++k) buf[k] = g[k];
        const auto G = dft(buf);
        for (std::size_t c = 0; c < out_ch; ++c) {
            std::vector<cplx> H(nu);
            for (std::size_t k = 0; k < n; ++k) {
                const cplx v = G[k] * filt.response(c, phi, omega[k]);
                if (2 * k < n) {
                    H[k] = v;
                } else if (2 * k == n && upsample > 1) {
                    H[k] += 0.5 * v;  // Nyquist bin shared between both ends
                    H[nu - k] += 0.5 * v;
                } else {
                    H[k + nu - n] = v;
                }
            }
            const auto h = dft(H, true);
            auto dst = out.row(c, j);
            for (std::size_t k = 0; k < ns_out; ++k) dst[k] = h[k].real() / static_cast<double>(n);
        }
    }
    return out;
}

Image fbp_feature(const Sinogram& sino, const FbpFilter& filt, const Grid& grid, std::size_t upsample) {
    return backproject(filter_frequency(sino, filt, upsample), grid);
}

Image fbp_reconstruct(const Sinogram& sino, Apodization apod, double p, const Grid& grid, std::size_t upsample) {
    return fbp_feature(sino, FbpFilter::ramp(apod, p), grid, upsample);
}

}  // namespace tomofeat
