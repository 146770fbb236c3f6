#include "tomofeat/xform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tomofeat {

namespace {

constexpr std::size_t angle_block = 16;

void check_pitch(double a, double b) {
    if (std::abs(a - b) > 1e-9 * std::max(a, b))
        throw std::invalid_argument("s-pitch of filter and sinogram differ");
}

}  // namespace

struct RadonOperator::Matrix {
    // Rows are rays (angle-major), columns pixels.
    std::vector<std::uint64_t> row_ptr;
    std::vector<std::uint32_t> col;
    std::vector<double> val;
    // Transpose: rows are pixels.
    std::vector<std::uint64_t> t_ptr;
    std::vector<std::uint32_t> t_col;
    std::vector<double> t_val;
};

RadonOperator::RadonOperator(const Grid& grid, const SamplingSpec& spec, std::size_t cache_limit)
    : grid_(grid), spec_(spec) {
    if (grid_.n < 2) throw std::invalid_argument("radon: grid too small");
    if (spec_.radial_halfwidth() < grid_.extent * (1.0 - 1e-12))
        throw std::invalid_argument("radon: radial half-width smaller than the image extent");
    const std::size_t m = spec_.n_angles();
    cos_.resize(m);
    sin_.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        cos_[j] = std::cos(spec_.angle(j));
        sin_[j] = std::sin(spec_.angle(j));
    }
    const double h = grid_.pitch();
    half_steps_ = static_cast<long>(std::ceil(std::sqrt(2.0) * (grid_.extent + h) / h)) + 1;

    // Rough weight count: 4 per step over the chord through the image square.
    const double est = 4.0 * static_cast<double>(m) * static_cast<double>(spec_.n_samples()) *
                       static_cast<double>(grid_.n) * 1.2;
    if (est > static_cast<double>(cache_limit)) return;

    auto mat = std::make_unique<Matrix>();
    const std::size_t rays = m * spec_.n_samples();
    mat->row_ptr.assign(rays + 1, 0);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < spec_.n_samples(); ++k) {
            visit_ray(j, k, [&](std::size_t p, double w) {
                mat->col.push_back(static_cast<std::uint32_t>(p));
                mat->val.push_back(w);
            });
            mat->row_ptr[j * spec_.n_samples() + k + 1] = mat->col.size();
        }
    const std::size_t np = grid_.size();
    mat->t_ptr.assign(np + 1, 0);
    for (auto c : mat->col) ++mat->t_ptr[c + 1];
    for (std::size_t p = 0; p < np; ++p) mat->t_ptr[p + 1] += mat->t_ptr[p];
    mat->t_col.resize(mat->col.size());
    mat->t_val.resize(mat->col.size());
    std::vector<std::uint64_t> fill(mat->t_ptr.begin(), mat->t_ptr.end() - 1);
    for (std::size_t r = 0; r < rays; ++r)
        for (auto e = mat->row_ptr[r]; e < mat->row_ptr[r + 1]; ++e) {
            const auto pos = fill[mat->col[e]]++;
            mat->t_col[pos] = static_cast<std::uint32_t>(r);
            mat->t_val[pos] = mat->val[e];
        }
    matrix_ = std::move(mat);
}

RadonOperator::~RadonOperator() = default;
RadonOperator::RadonOperator(RadonOperator&&) noexcept = default;
RadonOperator& RadonOperator::operator=(RadonOperator&&) noexcept = default;

bool RadonOperator::cached() const { return matrix_ != nullptr; }

void RadonOperator::apply(std::span<const double> img, std::span<double> sino) const {
    const std::size_t ns = spec_.n_samples();
    const std::size_t rays = spec_.n_angles() * ns;
    if (img.size() != grid_.size() || sino.size() != rays)
        throw std::invalid_argument("radon: shape mismatch");
    if (matrix_) {
        const auto& M = *matrix_;
#pragma omp parallel for schedule(static)
        for (std::size_t r = 0; r < rays; ++r) {
            double acc = 0.0;
            for (auto e = M.row_ptr[r]; e < M.row_ptr[r + 1]; ++e) acc += M.val[e] * img[M.col[e]];
            sino[r] = acc;
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::size_t r = 0; r < rays; ++r) {
        double acc = 0.0;
        visit_ray(r / ns, r % ns, [&](std::size_t p, double w) { acc += w * img[p]; });
        sino[r] = acc;
    }
}

void RadonOperator::apply_adjoint(std::span<const double> sino, std::span<double> img) const {
    const std::size_t ns = spec_.n_samples();
    const std::size_t m = spec_.n_angles();
    const std::size_t np = grid_.size();
    if (img.size() != np || sino.size() != m * ns) throw std::invalid_argument("radon: shape mismatch");
    if (matrix_) {
        const auto& M = *matrix_;
#pragma omp parallel for schedule(static)
        for (std::size_t p = 0; p < np; ++p) {
            double acc = 0.0;
            for (auto e = M.t_ptr[p]; e < M.t_ptr[p + 1]; ++e) acc += M.t_val[e] * sino[M.t_col[e]];
            img[p] = acc;
        }
        return;
    }
    // Scatter per block of angles into private buffers, then reduce in a
    // fixed order so the result does not depend on the thread count.
    const std::size_t nblocks = (m + angle_block - 1) / angle_block;
    std::vector<std::vector<double>> parts(nblocks);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t b = 0; b < nblocks; ++b) {
        auto& buf = parts[b];
        buf.assign(np, 0.0);
        const std::size_t jend = std::min(m, (b + 1) * angle_block);
        for (std::size_t j = b * angle_block; j < jend; ++j)
            for (std::size_t k = 0; k < ns; ++k) {
                const double g = sino[j * ns + k];
                if (g == 0.0) continue;
                visit_ray(j, k, [&](std::size_t p, double w) { buf[p] += w * g; });
            }
    }
#pragma omp parallel for schedule(static)
    for (std::size_t p = 0; p < np; ++p) {
        double acc = 0.0;
        for (std::size_t b = 0; b < nblocks; ++b) acc += parts[b][p];
        img[p] = acc;
    }
}

Sinogram RadonOperator::forward(const Image& img) const {
    if (!(img.grid() == grid_)) throw std::invalid_argument("radon: image grid differs from operator grid");
    Sinogram out(spec_, img.channels());
    for (std::size_t c = 0; c < img.channels(); ++c) apply(img.channel(c), out.channel(c));
    return out;
}

Image RadonOperator::adjoint(const Sinogram& sino) const {
    if (!(sino.spec() == spec_)) throw std::invalid_argument("radon: sinogram geometry differs");
    Image out(grid_, sino.channels());
    for (std::size_t c = 0; c < sino.channels(); ++c) apply_adjoint(sino.channel(c), out.channel(c));
    return out;
}

Sinogram forward(const Image& img, const SamplingSpec& spec) {
    return RadonOperator(img.grid(), spec, 0).forward(img);
}

Image adjoint(const Sinogram& sino, const Grid& grid) {
    return RadonOperator(grid, sino.spec(), 0).adjoint(sino);
}

Image backproject(const Sinogram& sino, const Grid& grid) {
    const auto& spec = sino.spec();
    const std::size_t m = spec.n_angles(), ns = spec.n_samples();
    const double ds = spec.pitch(), s0 = spec.offset(0);
    std::vector<double> cs(m), sn(m);
    for (std::size_t j = 0; j < m; ++j) {
        cs[j] = std::cos(spec.angle(j));
        sn[j] = std::sin(spec.angle(j));
    }
    const double weight = 2.0 * std::numbers::pi / static_cast<double>(m);
    Image out(grid, sino.channels());
    const std::size_t n = grid.n;
    for (std::size_t c = 0; c < sino.channels(); ++c) {
#pragma omp parallel for schedule(static)
        for (std::size_t r = 0; r < n; ++r) {
            const double y = grid.coord(r);
            for (std::size_t q = 0; q < n; ++q) {
                const double x = grid.coord(q);
                double acc = 0.0;
                for (std::size_t j = 0; j < m; ++j) {
                    const double u = (x * cs[j] + y * sn[j] - s0) / ds;
                    const double fl = std::floor(u);
                    const long i0 = static_cast<long>(fl);
                    if (i0 < -1 || i0 >= static_cast<long>(ns)) continue;
                    const double a = u - fl;
                    const auto row = sino.row(c, j);
                    if (i0 >= 0) acc += (1.0 - a) * row[static_cast<std::size_t>(i0)];
                    if (i0 + 1 < static_cast<long>(ns)) acc += a * row[static_cast<std::size_t>(i0 + 1)];
                }
                out.at(c, r, q) = weight * acc;
            }
        }
    }
    return out;
}

Sinogram convolve_s(const Sinogram& sino, const DataFilter& filt, ConvolutionMethod method) {
    check_pitch(filt.pitch(), sino.spec().pitch());
    if (sino.channels() == 2 && filt.channels() == 2)
        throw std::invalid_argument("convolve_s: cannot apply a 2-channel filter to 2-channel data");
    const std::size_t out_ch = std::max(sino.channels(), filt.channels());
    Sinogram out(sino.spec(), out_ch);
    const std::size_t m = sino.n_angles(), ns = sino.n_samples();
    const auto& u = filt.profile();
    const std::size_t r = filt.radius();
    const double ds = sino.spec().pitch();
    if (method == ConvolutionMethod::automatic)
        method = (u.size() > 64 && ns > 64) ? ConvolutionMethod::fft : ConvolutionMethod::direct;

    for (std::size_t ci = 0; ci < sino.channels(); ++ci) {
#pragma omp parallel for schedule(static)
        for (std::size_t j = 0; j < m; ++j) {
            const auto g = sino.row(ci, j);
            std::vector<double> res(ns, 0.0);
            if (method == ConvolutionMethod::direct) {
                for (std::size_t k = 0; k < ns; ++k) {
                    double acc = 0.0;
                    // out[k] = sum_l u[l] g[k - l], l in [-r, r]
                    const long lo = std::max<long>(-static_cast<long>(r), static_cast<long>(k) - static_cast<long>(ns) + 1);
                    const long hi = std::min<long>(static_cast<long>(r), static_cast<long>(k));
                    for (long l = lo; l <= hi; ++l)
                        acc += u[static_cast<std::size_t>(l + static_cast<long>(r))] *
                               g[static_cast<std::size_t>(static_cast<long>(k) - l)];
                    res[k] = acc * ds;
                }
            } else {
                const auto full = fft_convolve(g, u);
                for (std::size_t k = 0; k < ns; ++k) res[k] = full[k + r] * ds;
            }
            const double phi = sino.spec().angle(j);
            for (std::size_t co = 0; co < out_ch; ++co) {
                if (sino.channels() == 2 && co != ci) continue;
                const double w = filt.channel_weight(co, phi);
                auto dst = out.row(co, j);
                for (std::size_t k = 0; k < ns; ++k) dst[k] = w * res[k];
            }
        }
    }
    return out;
}

double Spectrum::domega() const {
    const std::size_t n = spec.n_samples();
    return 2.0 * std::numbers::pi / (static_cast<double>(n) * spec.pitch());
}

Spectrum fourier_s(const Sinogram& sino) {
    const auto& spec = sino.spec();
    const std::size_t n = spec.n_samples(), m = spec.n_angles();
    const long nr = static_cast<long>(spec.n_radial());
    Spectrum out{spec, sino.channels(), std::vector<double>(n), std::vector<cplx>(sino.channels() * m * n)};
    const double dw = out.domega();
    for (std::size_t k = 0; k < n; ++k) out.omegas[k] = static_cast<double>(static_cast<long>(k) - nr) * dw;
    const double scale = spec.pitch() / std::sqrt(2.0 * std::numbers::pi);
    const double s0 = spec.offset(0);
    for (std::size_t c = 0; c < sino.channels(); ++c)
        for (std::size_t j = 0; j < m; ++j) {
            const auto row = sino.row(c, j);
            std::vector<cplx> x(row.begin(), row.end());
            const auto X = dft(x);
            for (std::size_t k = 0; k < n; ++k) {
                const long kk = static_cast<long>(k) - nr;
                const std::size_t idx = static_cast<std::size_t>((kk + static_cast<long>(n)) % static_cast<long>(n));
                out.at(c, j, k) = scale * X[idx] * std::polar(1.0, -out.omegas[k] * s0);
            }
        }
    return out;
}

Sinogram inverse_fourier_s(const Spectrum& sp) {
    const std::size_t n = sp.spec.n_samples(), m = sp.spec.n_angles();
    const long nr = static_cast<long>(sp.spec.n_radial());
    Sinogram out(sp.spec, sp.channels);
    const double scale = sp.domega() / std::sqrt(2.0 * std::numbers::pi);
    const double s0 = sp.spec.offset(0);
    for (std::size_t c = 0; c < sp.channels; ++c)
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<cplx> X(n);
            for (std::size_t k = 0; k < n; ++k) {
                const long kk = static_cast<long>(k) - nr;
                const std::size_t idx = static_cast<std::size_t>((kk + static_cast<long>(n)) % static_cast<long>(n));
                X[idx] = sp.at(c, j, k) * std::polar(1.0, sp.omegas[k] * s0);
            }
            const auto x = dft(X, true);
            auto dst = out.row(c, j);
            for (std::size_t k = 0; k < n; ++k) dst[k] = scale * x[k].real();
        }
    return out;
}

}  // namespace tomofeat
