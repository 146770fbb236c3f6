#include "tomofeat/edges.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tomofeat {

std::size_t EdgeMap::count() const {
    std::size_t k = 0;
    for (auto v : mask) k += v;
    return k;
}

EdgeMap zero_crossings(const Image& log_map, double t, bool normalize) {
    if (log_map.channels() != 1) throw std::invalid_argument("zero_crossings: expects one channel");
    const std::size_t n = log_map.n();
    EdgeMap out{log_map.grid(), std::vector<std::uint8_t>(n * n, 0), "log-zero-crossing", {}};
    std::ostringstream ps;
    ps << "t=" << t << " normalize=" << (normalize ? 1 : 0);
    out.params = ps.str();

    const auto src = log_map.channel(0);
    double scale = 1.0;
    if (normalize) {
        const double m = max_abs(src);
        if (m > 0.0) scale = 1.0 / m;
    }
    auto v = [&](long r, long c) -> double {
        if (r < 0 || c < 0 || r >= static_cast<long>(n) || c >= static_cast<long>(n)) return 0.0;
        return src[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)] * scale;
    };
    constexpr long dr[4] = {0, 0, 1, -1};
    constexpr long dc[4] = {1, -1, 0, 0};
    for (long r = 0; r < static_cast<long>(n); ++r)
        for (long c = 0; c < static_cast<long>(n); ++c) {
            const double p = v(r, c);
            bool mark = false;
            if (p < 0.0) {
                for (int k = 0; k < 4 && !mark; ++k) {
                    const double q = v(r + dr[k], c + dc[k]);
                    mark = q > 0.0 && std::abs(p - q) > t;
                }
            } else if (p == 0.0) {
                const double l = v(r, c - 1), rr = v(r, c + 1), u = v(r - 1, c), d = v(r + 1, c);
                mark = (l * rr < 0.0 && std::abs(l - rr) > 2.0 * t) || (u * d < 0.0 && std::abs(u - d) > 2.0 * t);
            }
            if (mark) out.mask[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)] = 1;
        }
    return out;
}

Image gradient_magnitude(const Image& grad_map) {
    if (grad_map.channels() != 2) throw std::invalid_argument("gradient_magnitude: expects two channels");
    Image out(grad_map.grid());
    const auto gx = grad_map.channel(0), gy = grad_map.channel(1);
    auto dst = out.channel(0);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::hypot(gx[i], gy[i]);
    return out;
}

EdgeMap canny(const Image& grad_map, double low, double high) {
    if (grad_map.channels() != 2) throw std::invalid_argument("canny: expects a 2-channel gradient map");
    if (!(low >= 0.0) || !(low <= high)) throw std::invalid_argument("canny: need 0 <= low <= high");
    const std::size_t n = grad_map.n();
    EdgeMap out{grad_map.grid(), std::vector<std::uint8_t>(n * n, 0), "canny", {}};
    std::ostringstream ps;
    ps << "low=" << low << " high=" << high;
    out.params = ps.str();

    Image mag = gradient_magnitude(grad_map);
    auto m = mag.channel(0);
    const double peak = max_abs(m);
    if (!(peak > 0.0)) return out;
    for (double& x : m) x /= peak;
    const auto gx = grad_map.channel(0), gy = grad_map.channel(1);

    auto at = [&](long r, long c) -> double {
        if (r < 0 || c < 0 || r >= static_cast<long>(n) || c >= static_cast<long>(n)) return 0.0;
        return m[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)];
    };
    // Neighbour offsets (row, col) along the gradient for the four sectors;
    // x runs along columns and y along rows.
    constexpr long off[4][2] = {{0, 1}, {1, 1}, {1, 0}, {1, -1}};
    std::vector<double> thin(n * n, 0.0);
    for (long r = 0; r < static_cast<long>(n); ++r)
        for (long c = 0; c < static_cast<long>(n); ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c);
            if (m[i] == 0.0) continue;
            double ang = std::atan2(gy[i], gx[i]);
            if (ang < 0.0) ang += std::numbers::pi;
            const int sector = static_cast<int>(std::floor(ang / (std::numbers::pi / 4.0) + 0.5)) % 4;
            const double a = at(r + off[sector][0], c + off[sector][1]);
            const double b = at(r - off[sector][0], c - off[sector][1]);
            if (m[i] > a && m[i] >= b) thin[i] = m[i];
        }

    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n * n; ++i)
        if (thin[i] >= high && thin[i] > 0.0) {
            out.mask[i] = 1;
            stack.push_back(i);
        }
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const long r = static_cast<long>(i / n), c = static_cast<long>(i % n);
        for (long a = -1; a <= 1; ++a)
            for (long b = -1; b <= 1; ++b) {
                const long rr = r + a, cc = c + b;
                if (rr < 0 || cc < 0 || rr >= static_cast<long>(n) || cc >= static_cast<long>(n)) continue;
                const std::size_t j = static_cast<std::size_t>(rr) * n + static_cast<std::size_t>(cc);
                if (!out.mask[j] && thin[j] >= low && thin[j] > 0.0) {
                    out.mask[j] = 1;
                    stack.push_back(j);
                }
            }
    }
    return out;
}

}  // namespace tomofeat
