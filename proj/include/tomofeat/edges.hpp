#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tomofeat/grid.hpp"

namespace tomofeat {

struct EdgeMap {
    Grid grid;
    std::vector<std::uint8_t> mask;  // row-major, 0 or 1
    std::string method;
    std::string params;

    std::uint8_t operator()(std::size_t r, std::size_t c) const { return mask[r * grid.n + c]; }
    std::size_t count() const;
};

/// Marr-Hildreth zero crossings. A pixel is marked when it is negative and a
/// 4-neighbour is positive with |difference| > t, or when it is exactly zero
/// between opposite signs (horizontally or vertically) with |difference| > 2t.
/// With `normalize` the map is first divided by its peak magnitude.
EdgeMap zero_crossings(const Image& log_map, double t, bool normalize = true);

/// Canny on a 2-channel gradient map: magnitude normalized to peak 1,
/// 4-sector non-maximum suppression, double threshold and 8-connected hysteresis.
EdgeMap canny(const Image& grad_map, double low, double high);

Image gradient_magnitude(const Image& grad_map);

}  // namespace tomofeat
