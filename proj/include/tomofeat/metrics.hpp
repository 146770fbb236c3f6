#pragma once

#include <cstdint>
#include <vector>

#include "tomofeat/edges.hpp"
#include "tomofeat/phantom.hpp"

namespace tomofeat {

/// Pixels whose square cell (side = pitch, centred on the pixel) meets one of the circles.
std::vector<std::uint8_t> boundary_cells(const std::vector<Disc>& discs, const Grid& grid);

/// Square dilation by `radius` pixels (a (2 radius + 1)^2 structuring element).
std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& mask, std::size_t n, std::size_t radius);

/// Energy outside the dilated true edge set divided by the energy inside.
double artifact_ratio(const Image& img, const std::vector<Disc>& discs, std::size_t radius = 3);

/// Fraction of `samples` equispaced points on the circle of `disc` that have a
/// marked pixel within tol_px pixels.
double boundary_coverage(const EdgeMap& edges, const Disc& disc, double tol_px = 2.0, std::size_t samples = 720);

/// Fraction of marked pixels lying within tol_px pixels of some circle.
double edge_precision(const EdgeMap& edges, const std::vector<Disc>& discs, double tol_px = 2.0);

}  // namespace tomofeat
