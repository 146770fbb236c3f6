#include "tomofeat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tomofeat {

Grid::Grid(std::size_t n_, double extent_) : n(n_), extent(extent_) {
    if (n < 2) throw std::invalid_argument("grid: need at least 2 pixels per side");
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw std::invalid_argument("grid: extent must be positive");
}

Image::Image(Grid grid, std::size_t channels)
    : grid_(grid), channels_(channels), data_(channels * grid.size(), 0.0) {
    if (channels != 1 && channels != 2) throw std::invalid_argument("image: 1 or 2 channels");
}

Image Image::channel_image(std::size_t c) const {
    if (c >= channels_) throw std::invalid_argument("image: channel out of range");
    Image out(grid_, 1);
    std::copy(channel(c).begin(), channel(c).end(), out.values().begin());
    return out;
}

Image Image::stack(const std::vector<Image>& parts) {
    if (parts.empty() || parts.size() > 2) throw std::invalid_argument("image: stack 1 or 2 parts");
    Image out(parts[0].grid(), parts.size());
    for (std::size_t c = 0; c < parts.size(); ++c) {
        if (!(parts[c].grid() == parts[0].grid()) || parts[c].channels() != 1)
            throw std::invalid_argument("image: stack parts must share a grid");
        std::copy(parts[c].values().begin(), parts[c].values().end(), out.channel(c).begin());
    }
    return out;
}

Sinogram::Sinogram(SamplingSpec spec, std::size_t channels)
    : spec_(std::move(spec)), channels_(channels) {
    if (channels != 1 && channels != 2) throw std::invalid_argument("sinogram: 1 or 2 channels");
    data_.assign(channels_ * n_angles() * n_samples(), 0.0);
}

Sinogram Sinogram::channel_sinogram(std::size_t c) const {
    if (c >= channels_) throw std::invalid_argument("sinogram: channel out of range");
    Sinogram out(spec_, 1);
    std::copy(channel(c).begin(), channel(c).end(), out.values().begin());
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

double rel_l2(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("rel_l2: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace tomofeat
