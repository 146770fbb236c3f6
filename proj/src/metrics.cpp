#include "tomofeat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tomofeat {

std::vector<std::uint8_t> boundary_cells(const std::vector<Disc>& discs, const Grid& grid) {
    const std::size_t n = grid.n;
    const double h = grid.pitch();
    std::vector<std::uint8_t> out(n * n, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const double x = grid.coord(c), y = grid.coord(r);
            for (const auto& d : discs) {
                const double dx = std::abs(x - d.center[0]), dy = std::abs(y - d.center[1]);
                const double nearest = std::hypot(std::max(dx - h / 2, 0.0), std::max(dy - h / 2, 0.0));
                const double farthest = std::hypot(dx + h / 2, dy + h / 2);
                if (nearest <= d.radius && farthest >= d.radius) {
                    out[r * n + c] = 1;
                    break;
                }
            }
        }
    return out;
}

std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& mask, std::size_t n, std::size_t radius) {
    if (mask.size() != n * n) throw std::invalid_argument("dilate: size mismatch");
    const long R = static_cast<long>(radius), N = static_cast<long>(n);
    // Separable: rows then columns.
    std::vector<std::uint8_t> tmp(n * n, 0), out(n * n, 0);
    for (long r = 0; r < N; ++r)
        for (long c = 0; c < N; ++c) {
            bool any = false;
            for (long k = std::max(0L, c - R); k <= std::min(N - 1, c + R) && !any; ++k) any = mask[r * N + k];
            tmp[r * N + c] = any;
        }
    for (long r = 0; r < N; ++r)
        for (long c = 0; c < N; ++c) {
            bool any = false;
            for (long k = std::max(0L, r - R); k <= std::min(N - 1, r + R) && !any; ++k) any = tmp[k * N + c];
            out[r * N + c] = any;
        }
    return out;
}

double artifact_ratio(const Image& img, const std::vector<Disc>& discs, std::size_t radius) {
    if (img.channels() != 1) throw std::invalid_argument("artifact_ratio: expects one channel");
    const auto band = dilate(boundary_cells(discs, img.grid()), img.n(), radius);
    const auto v = img.channel(0);
    double in = 0.0, out = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) (band[i] ? in : out) += v[i] * v[i];
    return in > 0.0 ? out / in : (out > 0.0 ? INFINITY : 0.0);
}

double boundary_coverage(const EdgeMap& edges, const Disc& disc, double tol_px, std::size_t samples) {
    const Grid& g = edges.grid;
    const double h = g.pitch();
    const long n = static_cast<long>(g.n);
    const long w = static_cast<long>(std::ceil(tol_px)) + 1;
    std::size_t hit = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
        const double px = disc.center[0] + disc.radius * std::cos(a);
        const double py = disc.center[1] + disc.radius * std::sin(a);
        const long c0 = std::lround((px + g.extent) / h), r0 = std::lround((py + g.extent) / h);
        bool found = false;
        for (long r = r0 - w; r <= r0 + w && !found; ++r)
            for (long c = c0 - w; c <= c0 + w && !found; ++c) {
                if (r < 0 || c < 0 || r >= n || c >= n) continue;
                if (!edges.mask[static_cast<std::size_t>(r * n + c)]) continue;
                found = std::hypot(g.coord(static_cast<std::size_t>(c)) - px,
                                   g.coord(static_cast<std::size_t>(r)) - py) <= tol_px * h;
            }
        hit += found;
    }
    return static_cast<double>(hit) / static_cast<double>(samples);
}

double edge_precision(const EdgeMap& edges, const std::vector<Disc>& discs, double tol_px) {
    const Grid& g = edges.grid;
    std::size_t marked = 0, near = 0;
    for (std::size_t r = 0; r < g.n; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            if (!edges(r, c)) continue;
            ++marked;
            for (const auto& d : discs) {
                const double dist = std::abs(std::hypot(g.coord(c) - d.center[0], g.coord(r) - d.center[1]) - d.radius);
                if (dist <= tol_px * g.pitch()) {
                    ++near;
                    break;
                }
            }
        }
    return marked ? static_cast<double>(near) / static_cast<double>(marked) : 1.0;
}

}  // namespace tomofeat
