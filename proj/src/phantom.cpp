#include "tomofeat/phantom.hpp"

#include <cmath>
#include <stdexcept>

namespace tomofeat {

DiscPhantom::DiscPhantom(std::vector<Disc> discs, std::size_t grid_size, double extent)
    : discs_(std::move(discs)), n_(grid_size), extent_(extent) {
    if (n_ < 2) throw std::invalid_argument("phantom: grid_size must be >= 2");
    if (!(extent_ > 0.0)) throw std::invalid_argument("phantom: extent must be positive");
    for (const auto& d : discs_) {
        if (!(d.radius > 0.0)) throw std::invalid_argument("phantom: disc radius must be positive");
        if (!std::isfinite(d.amplitude) || !std::isfinite(d.center[0]) || !std::isfinite(d.center[1]))
            throw std::invalid_argument("phantom: non-finite disc parameter");
        if (std::hypot(d.center[0], d.center[1]) + d.radius > extent_ * (1.0 + 1e-12))
            throw std::invalid_argument("phantom: disc leaves the reconstruction disc");
    }
}

std::vector<Disc> three_disc_layout() {
    return {{{-0.15, 0.0}, 0.55, 1.0}, {{0.45, 0.45}, 0.2, 1.0}, {{0.45, -0.45}, 0.18, 1.0}};
}

std::vector<Disc> weak_edge_layout(double weak) {
    auto d = three_disc_layout();
    d.push_back({{-0.35, 0.2}, 0.15, weak});
    d.push_back({{0.0, -0.25}, 0.13, weak});
    return d;
}

Image rasterize(const DiscPhantom& p) {
    Image img(p.grid());
    const Grid g = p.grid();
    for (std::size_t r = 0; r < g.n; ++r) {
        const double y = g.coord(r);
        for (std::size_t c = 0; c < g.n; ++c) {
            const double x = g.coord(c);
            double v = 0.0;
            for (const auto& d : p.discs()) {
                const double dx = x - d.center[0], dy = y - d.center[1];
                if (dx * dx + dy * dy < d.radius * d.radius) v += d.amplitude;
            }
            img(r, c) = v;
        }
    }
    return img;
}

double analytic_radon_value(const std::vector<Disc>& discs, double phi, double s) {
    const double ct = std::cos(phi), st = std::sin(phi);
    double v = 0.0;
    for (const auto& d : discs) {
        const double dist = s - (d.center[0] * ct + d.center[1] * st);
        const double q = d.radius * d.radius - dist * dist;
        if (q > 0.0) v += d.amplitude * 2.0 * std::sqrt(q);
    }
    return v;
}

Sinogram analytic_radon(const DiscPhantom& p, const SamplingSpec& spec) {
    Sinogram out(spec);
    for (std::size_t j = 0; j < spec.n_angles(); ++j) {
        const double phi = spec.angle(j);
        for (std::size_t k = 0; k < spec.n_samples(); ++k)
            out.at(0, j, k) = analytic_radon_value(p.discs(), phi, spec.offset(k));
    }
    return out;
}

}  // namespace tomofeat
