#include "tomofeat/varsolve.hpp"

#include <cmath>
#include <random>

namespace tomofeat {

void SolverConfig::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("solver: lambda must be >= 0");
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("solver: mu must be >= 0");
    if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
    if (step == StepPolicy::fixed && !(fixed_step > 0.0))
        throw std::invalid_argument("solver: fixed step must be positive");
    if (step == StepPolicy::power_iteration && power_iters < 30)
        throw std::invalid_argument("solver: need at least 30 power iterations");
    if (data_scale && !(*data_scale > 0.0)) throw std::invalid_argument("solver: data_scale must be positive");
}

Sinogram preprocess_rhs(const Sinogram& y, const DataFilter& filt) { return convolve_s(y, filt); }

double soft_threshold(double x, double tau) {
    const double a = std::abs(x) - tau;
    return a > 0.0 ? std::copysign(a, x) : 0.0;
}

void soft_threshold(std::span<double> x, double tau) {
    for (double& v : x) v = soft_threshold(v, tau);
}

Image soft_threshold(const Image& img, double tau) {
    Image out = img;
    soft_threshold(std::span<double>(out.values()), tau);
    return out;
}

void grad_forward(std::span<const double> h, std::size_t n, std::span<double> gx, std::span<double> gy) {
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const double v = h[r * n + c];
            gx[r * n + c] = (c + 1 < n ? h[r * n + c + 1] : 0.0) - v;
            gy[r * n + c] = (r + 1 < n ? h[(r + 1) * n + c] : 0.0) - v;
        }
}

void grad_transpose(std::span<const double> gx, std::span<const double> gy, std::size_t n,
                    std::span<double> out) {
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double v = -gx[r * n + c] - gy[r * n + c];
            if (c > 0) v += gx[r * n + c - 1];
            if (r > 0) v += gy[(r - 1) * n + c];
            out[r * n + c] = v;
        }
}

void grad_normal(std::span<const double> h, std::size_t n, std::span<double> out) {
    std::vector<double> gx(n * n), gy(n * n);
    grad_forward(h, n, gx, gy);
    grad_transpose(gx, gy, n, out);
}

double grad_energy(std::span<const double> h, std::size_t n) {
    std::vector<double> gx(n * n), gy(n * n);
    grad_forward(h, n, gx, gy);
    return dot(gx, gx) + dot(gy, gy);
}

void smooth_gradient(const RadonOperator& op, std::span<const double> h, std::span<const double> rhs,
                     double mu, std::span<double> out) {
    std::vector<double> res(rhs.size());
    op.apply(h, res);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= rhs[i];
    op.apply_adjoint(res, out);
    if (mu > 0.0) {
        std::vector<double> lap(h.size());
        grad_normal(h, op.grid().n, lap);
        for (std::size_t i = 0; i < h.size(); ++i) out[i] += 2.0 * mu * lap[i];
    }
}

Image smooth_gradient(const RadonOperator& op, const Image& h, const Sinogram& rhs, double mu) {
    if (h.channels() != rhs.channels()) throw std::invalid_argument("smooth_gradient: channel mismatch");
    if (!(h.grid() == op.grid()) || !(rhs.spec() == op.spec()))
        throw std::invalid_argument("smooth_gradient: shape mismatch");
    Image out(h.grid(), h.channels());
    for (std::size_t c = 0; c < h.channels(); ++c) smooth_gradient(op, h.channel(c), rhs.channel(c), mu, out.channel(c));
    return out;
}

namespace {

ObjectiveTerms terms_from(std::span<const double> rh, std::span<const double> rhs, std::span<const double> h,
                          std::size_t n, double lambda, double mu) {
    ObjectiveTerms t;
    double d = 0.0;
    for (std::size_t i = 0; i < rh.size(); ++i) d += (rh[i] - rhs[i]) * (rh[i] - rhs[i]);
    t.data = 0.5 * d;
    t.h1 = mu > 0.0 ? mu * grad_energy(h, n) : 0.0;
    double a = 0.0;
    for (double v : h) a += std::abs(v);
    t.l1 = lambda * a;
    t.total = t.data + t.h1 + t.l1;
    return t;
}

}  // namespace

ObjectiveTerms objective(const RadonOperator& op, std::span<const double> h, std::span<const double> rhs,
                         double lambda, double mu) {
    std::vector<double> rh(rhs.size());
    op.apply(h, rh);
    return terms_from(rh, rhs, h, op.grid().n, lambda, mu);
}

double estimate_lipschitz(const RadonOperator& op, double mu, std::size_t iters, std::uint64_t seed) {
    const std::size_t np = op.grid().size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> v(np), w(np), sino(op.spec().n_angles() * op.spec().n_samples()), lap(np);
    for (double& x : v) x = nd(rng);
    double nv = norm2(v);
    for (double& x : v) x /= nv;
    double lam = 0.0;
    for (std::size_t it = 0; it < iters; ++it) {
        op.apply(v, sino);
        op.apply_adjoint(sino, w);
        if (mu > 0.0) {
            grad_normal(v, op.grid().n, lap);
            for (std::size_t i = 0; i < np; ++i) w[i] += 2.0 * mu * lap[i];
        }
        lam = norm2(w);
        if (!(lam > 0.0)) return 1.0;  // zero operator: any step is fine
        for (std::size_t i = 0; i < np; ++i) v[i] = w[i] / lam;
    }
    return 1.01 * lam;
}

SolveResult fista_rhs(const RadonOperator& op, const Sinogram& rhs, const SolverConfig& cfg) {
    cfg.validate();
    if (!(rhs.spec() == op.spec())) throw std::invalid_argument("fista: rhs geometry differs from operator");
    const std::size_t n = op.grid().n, np = op.grid().size();
    const std::size_t nr = rhs.n_angles() * rhs.n_samples();

    SolveResult res;
    res.h = Image(op.grid(), rhs.channels());
    res.lipschitz = cfg.step == StepPolicy::fixed ? 1.0 / cfg.fixed_step
                                                  : estimate_lipschitz(op, cfg.mu, cfg.power_iters, cfg.power_seed);
    const double L = res.lipschitz;
    const double tau = cfg.lambda / L;

    for (std::size_t ch = 0; ch < rhs.channels(); ++ch) {
        const auto raw = rhs.channel(ch);
        double scale = cfg.data_scale ? *cfg.data_scale : max_abs(raw);
        if (!(scale > 0.0)) scale = 1.0;
        res.data_scale.push_back(scale);
        std::vector<double> b(raw.begin(), raw.end());
        for (double& v : b) v /= scale;

        std::vector<double> h(np, 0.0), hn(np), z(np, 0.0), g(np), lap(np);
        std::vector<double> rh(nr, 0.0), rhn(nr), rz(nr, 0.0), resid(nr);
        const ObjectiveTerms init = terms_from(rh, b, h, n, cfg.lambda, cfg.mu);
        res.initial.push_back(init);
        std::vector<ObjectiveTerms> trace;
        double t = 1.0;
        std::size_t it = 0;
        for (; it < cfg.max_iters; ++it) {
            for (std::size_t i = 0; i < nr; ++i) resid[i] = rz[i] - b[i];
            op.apply_adjoint(resid, g);
            if (cfg.mu > 0.0) {
                grad_normal(z, n, lap);
                for (std::size_t i = 0; i < np; ++i) g[i] += 2.0 * cfg.mu * lap[i];
            }
            for (std::size_t i = 0; i < np; ++i) hn[i] = soft_threshold(z[i] - g[i] / L, tau);
            op.apply(hn, rhn);
            const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            const double beta = (t - 1.0) / tn;
            for (std::size_t i = 0; i < np; ++i) z[i] = hn[i] + beta * (hn[i] - h[i]);
            // R is linear, so R z follows from R h without another projection.
            for (std::size_t i = 0; i < nr; ++i) rz[i] = rhn[i] + beta * (rhn[i] - rh[i]);
            h.swap(hn);
            rh.swap(rhn);
            t = tn;

            const ObjectiveTerms obj = terms_from(rh, b, h, n, cfg.lambda, cfg.mu);
            if (!std::isfinite(obj.total))
                throw NumericalError("fista: non-finite objective at iteration " + std::to_string(it + 1));
            if (obj.total > 10.0 * init.total && obj.total > 0.0)
                throw NumericalError("fista: objective " + std::to_string(obj.total) + " exceeds 10x initial " +
                                     std::to_string(init.total) + " at iteration " + std::to_string(it + 1) +
                                     "; step size too large?");
            if (cfg.record_objective) trace.push_back(obj);
        }
        res.iterations = it;
        res.trace.push_back(std::move(trace));
        auto dst = res.h.channel(ch);
        for (std::size_t i = 0; i < np; ++i) dst[i] = scale * h[i];
    }
    return res;
}

SolveResult fista(const Sinogram& y, const DataFilter& filt, const Grid& grid, const SolverConfig& cfg) {
    const Sinogram rhs = preprocess_rhs(y, filt);
    const RadonOperator op(grid, y.spec());
    return fista_rhs(op, rhs, cfg);
}

Sinogram add_noise(const Sinogram& y, double eta, std::uint64_t seed) {
    if (!(eta >= 0.0)) throw std::invalid_argument("noise level must be >= 0");
    Sinogram out = y;
    const double sigma = eta * max_abs(y.values());
    if (sigma == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, sigma);
    for (double& v : out.values()) v += nd(rng);
    return out;
}

}  // namespace tomofeat
