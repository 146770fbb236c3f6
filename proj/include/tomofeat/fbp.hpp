#pragma once

#include "tomofeat/filters.hpp"
#include "tomofeat/grid.hpp"

namespace tomofeat {

/// Multiply the data by W(phi, omega) in the frequency domain along s. The
/// signal is zero-padded to at least twice its length (rounded up to a power
/// of two) so the implied convolution is linear, not circular. With
/// upsample > 1 the filtered rows come back on a grid `upsample` times finer
/// in s (band-limited interpolation), on an otherwise identical spec.
Sinogram filter_frequency(const Sinogram& sino, const FbpFilter& filt, std::size_t upsample = 1);

/// Feature map R*(W (*)_s g): frequency filtering followed by backprojection.
/// Output has 2 channels for the gradient filter. The filtered data are
/// upsampled in s before backprojection, which keeps the linear interpolation
/// there from blurring features only a few samples wide.
Image fbp_feature(const Sinogram& sino, const FbpFilter& filt, const Grid& grid, std::size_t upsample = 4);

/// Classical FBP, R* of |omega|/(4 pi) times an apodization window.
Image fbp_reconstruct(const Sinogram& sino, Apodization apod, double alpha_or_cutoff, const Grid& grid,
                      std::size_t upsample = 4);

}  // namespace tomofeat
