#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tomofeat/filters.hpp"
#include "tomofeat/phantom.hpp"
#include "tomofeat/xform.hpp"

using namespace tomofeat;

namespace {

constexpr double pi = std::numbers::pi;

Image gaussian_image(const Grid& g, double alpha, double cx, double cy) {
    Image img(g);
    for (std::size_t r = 0; r < g.n; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            const double dx = g.coord(c) - cx, dy = g.coord(r) - cy;
            img(r, c) = std::exp(-(dx * dx + dy * dy) / (2 * alpha * alpha)) / (2 * pi * alpha * alpha);
        }
    return img;
}

Sinogram analytic_gaussian(const SamplingSpec& spec, double alpha, double cx, double cy) {
    Sinogram s(spec);
    for (std::size_t j = 0; j < spec.n_angles(); ++j)
        for (std::size_t k = 0; k < spec.n_samples(); ++k) {
            const double phi = spec.angle(j);
            s.at(0, j, k) = radon_of_gaussian(alpha, spec.offset(k) - cx * std::cos(phi) - cy * std::sin(phi));
        }
    return s;
}

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<double> v(n);
    for (double& x : v) x = nd(rng);
    return v;
}

}  // namespace

TEST(Forward, ZeroImage) {
    const Grid g(32, 1.0);
    const auto spec = SamplingSpec::full(40.0, 8, 20, 1.0);
    const auto s = forward(Image(g), spec);
    for (double v : s.values()) EXPECT_EQ(v, 0.0);
}

TEST(Forward, RejectsTooNarrowRadialGrid) {
    const Grid g(32, 1.0);
    EXPECT_THROW(forward(Image(g), SamplingSpec::full(40.0, 8, 20, 0.5)), std::invalid_argument);
}

TEST(Forward, GaussianMatchesClosedForm) {
    const Grid g(256, 1.0);
    const auto spec = make_subset(SamplingSpec::full(128 * pi, 403, 128, 1.0), 16, UniformSparse{});
    const double alpha = 0.1;
    const auto num = forward(gaussian_image(g, alpha, 0.0, 0.0), spec);
    const auto ref = analytic_gaussian(spec, alpha, 0.0, 0.0);
    EXPECT_LE(rel_l2(num.values(), ref.values()), 1e-2);
}

TEST(Forward, Linearity) {
    const Grid g(48, 1.0);
    const auto spec = SamplingSpec::full(60.0, 12, 30, 1.5);
    std::mt19937_64 rng(11);
    Image a(g), b(g), c(g);
    a.values() = random_vec(g.size(), rng);
    b.values() = random_vec(g.size(), rng);
    for (std::size_t i = 0; i < g.size(); ++i) c.values()[i] = 2.5 * a.values()[i] - 0.75 * b.values()[i];
    const auto fa = forward(a, spec), fb = forward(b, spec), fc = forward(c, spec);
    for (std::size_t i = 0; i < fc.values().size(); ++i)
        EXPECT_NEAR(fc.values()[i], 2.5 * fa.values()[i] - 0.75 * fb.values()[i], 1e-12 * (1 + std::abs(fc.values()[i])));
}

TEST(Adjoint, DotProductTest) {
    const Grid g(32, 1.0);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto spec = make_subset(SamplingSpec::full(50.0, 50, 24, 1.2), 8, UniformSparse{});
        for (std::size_t cache : {std::size_t{0}, std::size_t{100'000'000}}) {
            const RadonOperator op(g, spec, cache);
            EXPECT_EQ(op.cached(), cache > 0);
            const auto f = random_vec(g.size(), rng);
            const auto y = random_vec(spec.n_angles() * spec.n_samples(), rng);
            std::vector<double> rf(y.size()), ry(f.size());
            op.apply(f, rf);
            op.apply_adjoint(y, ry);
            EXPECT_LE(std::abs(dot(rf, y) - dot(f, ry)) / (norm2(f) * norm2(y)), 1e-12);
        }
    }
}

TEST(Adjoint, CachedAndOnTheFlyAgree) {
    const Grid g(40, 1.0);
    const auto spec = SamplingSpec::full(30.0, 13, 25, 1.5);
    const RadonOperator a(g, spec, 0), b(g, spec, 100'000'000);
    std::mt19937_64 rng(9);
    const auto f = random_vec(g.size(), rng);
    const auto y = random_vec(spec.n_angles() * spec.n_samples(), rng);
    std::vector<double> fa(y.size()), fb(y.size()), ya(f.size()), yb(f.size());
    a.apply(f, fa);
    b.apply(f, fb);
    a.apply_adjoint(y, ya);
    b.apply_adjoint(y, yb);
    for (std::size_t i = 0; i < fa.size(); ++i) EXPECT_NEAR(fa[i], fb[i], 1e-12);
    for (std::size_t i = 0; i < ya.size(); ++i) EXPECT_NEAR(ya[i], yb[i], 1e-12);
}

TEST(Adjoint, ZeroSinogram) {
    const Grid g(16, 1.0);
    const auto spec = SamplingSpec::full(30.0, 6, 10, 1.0);
    const auto img = adjoint(Sinogram(spec), g);
    for (double v : img.values()) EXPECT_EQ(v, 0.0);
}

TEST(Adjoint, SingleBinIsInterpolationStrip) {
    const Grid g(32, 1.0);
    const auto spec = SamplingSpec::full(30.0, 7, 16, 1.0);
    const RadonOperator op(g, spec, 0);
    const std::size_t j = 3, k = 19;
    Sinogram e(spec);
    e.at(0, j, k) = 1.0;
    const auto img = op.adjoint(e);
    const double phi = spec.angle(j), s = spec.offset(k), h = g.pitch();
    std::size_t nonzero = 0;
    for (std::size_t r = 0; r < g.n; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            if (img(r, c) == 0.0) continue;
            ++nonzero;
            // Bilinear weights reach one pixel in each axis from a ray point.
            const double dist = std::abs(g.coord(c) * std::cos(phi) + g.coord(r) * std::sin(phi) - s);
            EXPECT_LT(dist, std::sqrt(2.0) * h + 1e-12);
        }
    EXPECT_GT(nonzero, g.n);
    // Column p of R equals row p of R^T.
    for (std::size_t p : {std::size_t{100}, std::size_t{517}, std::size_t{700}}) {
        Image ep(g);
        ep.values()[p] = 1.0;
        EXPECT_NEAR(op.forward(ep).at(0, j, k), img.values()[p], 1e-15);
    }
}

TEST(Backproject, ConstantGivesTwoPi) {
    const Grid g(64, 1.0);
    const auto spec = SamplingSpec::full(60.0, 37, 30, 1.5);
    Sinogram one(spec);
    for (double& v : one.values()) v = 1.0;
    const auto img = backproject(one, g);
    for (std::size_t r = 0; r < g.n; ++r)
        for (std::size_t c = 0; c < g.n; ++c)
            if (std::hypot(g.coord(c), g.coord(r)) <= 1.0) EXPECT_NEAR(img(r, c), 2 * pi, 1e-12);
}

TEST(Backproject, ZeroSinogram) {
    const Grid g(16, 1.0);
    const auto img = backproject(Sinogram(SamplingSpec::full(30.0, 6, 10, 1.0)), g);
    for (double v : img.values()) EXPECT_EQ(v, 0.0);
}

TEST(Backproject, DeltaColumnIsRidge) {
    const Grid g(48, 1.0);
    const auto spec = SamplingSpec::full(60.0, 9, 20, 1.5);
    const std::size_t j = 2, k = 23;
    Sinogram e(spec);
    e.at(0, j, k) = 1.0;
    const auto img = backproject(e, g);
    const double phi = spec.angle(j);
    for (std::size_t r = 0; r < g.n; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            const double u = (g.coord(c) * std::cos(phi) + g.coord(r) * std::sin(phi) - spec.offset(k)) / spec.pitch();
            const double hat = std::max(0.0, 1.0 - std::abs(u));
            EXPECT_NEAR(img(r, c), 2 * pi / 9.0 * hat, 1e-12);
        }
}

TEST(ConvolveS, DeltaIsIdentity) {
    const auto spec = SamplingSpec::full(30.0, 5, 40, 1.0);
    std::mt19937_64 rng(2);
    Sinogram y(spec);
    y.values() = random_vec(y.values().size(), rng);
    const auto delta = DataFilter::tabulated(spec.pitch(), {1.0 / spec.pitch()});
    for (auto m : {ConvolutionMethod::direct, ConvolutionMethod::fft}) {
        const auto out = convolve_s(y, delta, m);
        for (std::size_t i = 0; i < y.values().size(); ++i) EXPECT_NEAR(out.values()[i], y.values()[i], 1e-12);
    }
}

TEST(ConvolveS, GaussianSemigroup) {
    const auto spec = make_subset(SamplingSpec::full(400 * pi, 1257, 400, 1.0), 6, UniformSparse{});
    const double a = 0.05, b = 0.03;
    const auto ya = analytic_gaussian(spec, a, 0.1, -0.2);
    const auto out = convolve_s(ya, sample_filter(FeatureKernel::gaussian(b), spec));
    const auto ref = analytic_gaussian(spec, std::hypot(a, b), 0.1, -0.2);
    EXPECT_LE(rel_l2(out.values(), ref.values()), 1e-3);
}

TEST(ConvolveS, DirectAndFftAgree) {
    const auto spec = SamplingSpec::full(30.0, 7, 150, 1.5);
    std::mt19937_64 rng(4);
    Sinogram y(spec);
    y.values() = random_vec(y.values().size(), rng);
    for (const auto& k : {FeatureKernel::log(0.05), FeatureKernel::gaussian_gradient(0.03),
                          FeatureKernel::ramlak_laplacian(1.0)}) {
        const auto f = sample_filter(k, spec);
        const auto d = convolve_s(y, f, ConvolutionMethod::direct);
        const auto q = convolve_s(y, f, ConvolutionMethod::fft);
        ASSERT_EQ(d.channels(), f.channels());
        EXPECT_GT(max_abs(q.values()), 0.0);
        for (std::size_t i = 0; i < d.values().size(); ++i)
            EXPECT_NEAR(d.values()[i], q.values()[i], 1e-10 * max_abs(d.values()));
    }
}

TEST(ConvolveS, PitchMismatch) {
    const auto spec = SamplingSpec::full(30.0, 5, 40, 1.0);
    EXPECT_THROW(convolve_s(Sinogram(spec), DataFilter::tabulated(0.5, {1.0})), std::invalid_argument);
}

TEST(FourierS, SliceOfGaussian) {
    const auto spec = SamplingSpec::full(30.0, 4, 400, 1.5);
    const double alpha = 0.05;
    const auto sp = fourier_s(analytic_gaussian(spec, alpha, 0.0, 0.0));
    for (std::size_t j = 0; j < spec.n_angles(); ++j)
        for (std::size_t k = 0; k < sp.omegas.size(); ++k) {
            const double w = sp.omegas[k];
            const double ref = std::exp(-alpha * alpha * w * w / 2) / std::sqrt(2 * pi);
            EXPECT_NEAR(sp.at(0, j, k).real(), ref, 1e-3);
            EXPECT_NEAR(sp.at(0, j, k).imag(), 0.0, 1e-3);
        }
}

TEST(FourierS, ShiftedGaussianPhase) {
    const auto spec = SamplingSpec::full(30.0, 3, 300, 1.5);
    const double alpha = 0.06, cx = 0.2;
    const auto sp = fourier_s(analytic_gaussian(spec, alpha, cx, 0.0));
    for (std::size_t j = 0; j < spec.n_angles(); ++j) {
        const double shift = cx * std::cos(spec.angle(j));
        for (std::size_t k = 0; k < sp.omegas.size(); ++k) {
            const double w = sp.omegas[k];
            const cplx ref = std::polar(std::exp(-alpha * alpha * w * w / 2) / std::sqrt(2 * pi), -w * shift);
            EXPECT_LT(std::abs(sp.at(0, j, k) - ref), 1e-3);
        }
    }
}

TEST(FourierS, ZeroParsevalRoundTrip) {
    const auto spec = SamplingSpec::full(30.0, 5, 64, 1.0);
    const auto z = fourier_s(Sinogram(spec));
    for (const auto& v : z.values) EXPECT_EQ(std::abs(v), 0.0);

    std::mt19937_64 rng(8);
    Sinogram y(spec, 2);
    y.values() = random_vec(y.values().size(), rng);
    const auto sp = fourier_s(y);
    double e_s = 0.0, e_w = 0.0;
    for (double v : y.values()) e_s += v * v * spec.pitch();
    for (const auto& v : sp.values) e_w += std::norm(v) * sp.domega();
    EXPECT_NEAR(e_w / e_s, 1.0, 1e-10);
    const auto back = inverse_fourier_s(sp);
    for (std::size_t i = 0; i < y.values().size(); ++i) EXPECT_NEAR(back.values()[i], y.values()[i], 1e-12);
}

TEST(Identities, ForwardConvolution) {
    // R(g_a * g_b) = R g_a (*)_s R g_b, with g_a * g_b = g_sqrt(a^2 + b^2).
    const Grid g(256, 1.0);
    const auto full = SamplingSpec::full(128 * pi, 403, 128, 1.0);
    const double a = 0.05, b = 0.05;
    for (const auto& spec : {make_subset(full, 40, UniformSparse{}), make_subset(full, 7, UniformSparse{})}) {
        const auto lhs = forward(gaussian_image(g, std::hypot(a, b), 0.15, -0.1), spec);
        const auto rhs = convolve_s(forward(gaussian_image(g, a, 0.15, -0.1), spec),
                                    sample_filter(FeatureKernel::gaussian(b), spec));
        EXPECT_LE(rel_l2(rhs.values(), lhs.values()), 1e-2);
    }
}

TEST(Identities, DualConvolution) {
    // R*u (*) f = R*(u (*)_s R f) with u = R g_b and f = g_a.
    const Grid g(128, 1.0);
    const double h = g.pitch();
    const auto spec = SamplingSpec::from_bandwidth(96 * pi, 1.5);
    const double a = 0.05, b = 0.08;
    const auto u = sample_filter(FeatureKernel::gaussian(b), spec);
    Sinogram useq(spec);
    for (std::size_t j = 0; j < spec.n_angles(); ++j)
        for (std::size_t k = 0; k < spec.n_samples(); ++k) useq.at(0, j, k) = radon_of_gaussian(b, spec.offset(k));
    const auto rhs_img = backproject(convolve_s(analytic_gaussian(spec, a, 0.0, 0.0), u), g);
    const auto bu = backproject(useq, g);
    const long rad = static_cast<long>(std::ceil(8 * a / h)), n = static_cast<long>(g.n);
    double num = 0.0, den = 0.0;
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) {
            if (std::hypot(g.coord(c), g.coord(r)) > 0.5) continue;
            double acc = 0.0;
            for (long dr = -rad; dr <= rad; ++dr)
                for (long dc = -rad; dc <= rad; ++dc) {
                    const double x = static_cast<double>(dc) * h, y = static_cast<double>(dr) * h;
                    acc += bu(r - dr, c - dc) * std::exp(-(x * x + y * y) / (2 * a * a)) / (2 * pi * a * a) * h * h;
                }
            num += (acc - rhs_img(r, c)) * (acc - rhs_img(r, c));
            den += rhs_img(r, c) * rhs_img(r, c);
        }
    EXPECT_LE(std::sqrt(num / den), 5e-2);
}
