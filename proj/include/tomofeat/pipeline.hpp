#pragma once

#include <iosfwd>
#include <string>

#include "tomofeat/config.hpp"
#include "tomofeat/edges.hpp"
#include "tomofeat/grid.hpp"

namespace tomofeat {

DiscPhantom make_phantom(const Config& cfg);

/// Measured data for the configured geometry, with noise when eta > 0.
/// Data come from exact line integrals of the phantom or, when `image` is
/// given or the config asks for it, from the discrete projector.
Sinogram simulate(const Config& cfg, const Image* image = nullptr);

DataFilter build_filter(const FilterConfig& f, const Grid& grid, const SamplingSpec& spec);

/// FBP counterpart of a data filter: the gradient kernel maps to W_grad,
/// everything else to W_LoG with the filter's alpha.
Image fbp_for_filter(const Sinogram& sino, const FilterConfig& f, const Grid& grid);

/// Canny for 2-channel maps, zero crossings otherwise.
EdgeMap detect_edges(const Image& feature, const EdgeConfig& cfg);

/// Simulate, reconstruct every filter x run, detect edges, and write all
/// intermediates plus summary.csv into out_dir.
void run_pipeline(const Config& cfg, const std::string& out_dir, std::ostream& log);

}  // namespace tomofeat
