#pragma once

#include <array>
#include <vector>

#include "tomofeat/grid.hpp"

namespace tomofeat {

struct Disc {
    std::array<double, 2> center{0.0, 0.0};
    double radius = 1.0;
    double amplitude = 1.0;
};

/// Union (sum) of discs rasterized on an N x N grid over [-extent, extent]^2.
class DiscPhantom {
public:
    DiscPhantom(std::vector<Disc> discs, std::size_t grid_size, double extent);

    const std::vector<Disc>& discs() const { return discs_; }
    Grid grid() const { return Grid(n_, extent_); }
    std::size_t grid_size() const { return n_; }
    double extent() const { return extent_; }

private:
    std::vector<Disc> discs_;
    std::size_t n_;
    double extent_;
};

/// The three high-contrast discs used in the sparse-view experiments.
std::vector<Disc> three_disc_layout();
/// Three discs plus two interior discs of amplitude `weak`.
std::vector<Disc> weak_edge_layout(double weak = 0.2);

/// Point sampling at pixel centers: a pixel gets the sum of amplitudes of the
/// discs that strictly contain its center.
Image rasterize(const DiscPhantom& p);

/// Exact line integrals a * 2 sqrt(r^2 - d^2) with d = |s - <c, theta>|.
Sinogram analytic_radon(const DiscPhantom& p, const SamplingSpec& spec);
double analytic_radon_value(const std::vector<Disc>& discs, double phi, double s);

}  // namespace tomofeat
