#include "tomofeat/filters.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace tomofeat {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt_2pi = std::sqrt(2.0 * pi);
const double sqrt_2_over_pi = std::sqrt(2.0 / pi);

// Gaussian-family tails are negligible (< 1e-12 of the peak) past 8.5 alpha.
constexpr double gaussian_support = 8.5;

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("filter: alpha must be positive");
}

// Power of Omega picked up by the data filter under dilation of the kernel.
int dilation_power(KernelKind k) { return k == KernelKind::lowpass ? 1 : 3; }

double lowpass_coeffs(double b, long l) { return l == 0 ? b / pi : 0.0; }

}  // namespace

std::string to_string(KernelKind k) {
    switch (k) {
        case KernelKind::gaussian: return "gaussian";
        case KernelKind::gaussian_gradient: return "gradient";
        case KernelKind::log: return "log";
        case KernelKind::lowpass: return "lowpass";
        case KernelKind::lowpass_laplacian: return "lowpass-laplacian";
        case KernelKind::ramlak_laplacian: return "ramlak";
        case KernelKind::tabulated: return "tabulated";
    }
    return "unknown";
}

KernelKind kernel_kind_from_string(const std::string& s) {
    if (s == "gaussian") return KernelKind::gaussian;
    if (s == "gradient" || s == "grad") return KernelKind::gaussian_gradient;
    if (s == "log") return KernelKind::log;
    if (s == "lowpass") return KernelKind::lowpass;
    if (s == "lowpass-laplacian") return KernelKind::lowpass_laplacian;
    if (s == "ramlak" || s == "ramlak-laplacian") return KernelKind::ramlak_laplacian;
    throw std::invalid_argument("unknown filter kind '" + s + "'");
}

FeatureKernel FeatureKernel::gaussian(double alpha) { return {KernelKind::gaussian, alpha, 0.0, 0.0}; }
FeatureKernel FeatureKernel::gaussian_gradient(double alpha) {
    return {KernelKind::gaussian_gradient, alpha, 0.0, 0.0};
}
FeatureKernel FeatureKernel::log(double alpha) { return {KernelKind::log, alpha, 0.0, 0.0}; }
FeatureKernel FeatureKernel::lowpass(double b, double unit) { return {KernelKind::lowpass, 0.0, b, unit}; }
FeatureKernel FeatureKernel::lowpass_laplacian(double b, double unit) {
    return {KernelKind::lowpass_laplacian, 0.0, b, unit};
}
FeatureKernel FeatureKernel::ramlak_laplacian(double b, double unit) {
    return {KernelKind::ramlak_laplacian, 0.0, b, unit};
}

bool FeatureKernel::band_limited() const {
    return kind == KernelKind::lowpass || kind == KernelKind::lowpass_laplacian ||
           kind == KernelKind::ramlak_laplacian;
}

void FeatureKernel::validate() const {
    if (kind == KernelKind::tabulated) return;
    if (band_limited()) {
        if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("filter: b must be positive");
        if (frequency_unit < 0.0 || !std::isfinite(frequency_unit))
            throw std::invalid_argument("filter: frequency unit must be >= 0");
    } else {
        require_alpha(alpha);
    }
}

DataFilter::DataFilter(FeatureKernel kernel, double pitch, std::vector<double> profile)
    : kernel_(kernel), pitch_(pitch), profile_(std::move(profile)) {
    if (!(pitch_ > 0.0)) throw std::invalid_argument("data filter: pitch must be positive");
    if (profile_.size() % 2 != 1) throw std::invalid_argument("data filter: profile length must be odd");
}

DataFilter DataFilter::tabulated(double pitch, std::vector<double> profile) {
    return DataFilter(FeatureKernel{KernelKind::tabulated, 0.0, 0.0, 0.0}, pitch, std::move(profile));
}

double DataFilter::channel_weight(std::size_t c, double phi) const {
    if (kernel_.kind != KernelKind::gaussian_gradient) return 1.0;
    return c == 0 ? std::cos(phi) : std::sin(phi);
}

double DataFilter::value(std::size_t c, double phi, long l) const {
    const long r = static_cast<long>(radius());
    if (l < -r || l > r) return 0.0;
    return profile_[static_cast<std::size_t>(l + r)] * channel_weight(c, phi);
}

double radon_of_gaussian(double alpha, double s) {
    require_alpha(alpha);
    return std::exp(-s * s / (2.0 * alpha * alpha)) / (alpha * sqrt_2pi);
}

std::array<double, 2> grad_data_filter(double alpha, double phi, double s) {
    require_alpha(alpha);
    const double g = -s / (alpha * alpha * alpha * sqrt_2pi) * std::exp(-s * s / (2.0 * alpha * alpha));
    return {g * std::cos(phi), g * std::sin(phi)};
}

double log_data_filter(double alpha, double s) {
    require_alpha(alpha);
    const double a2 = alpha * alpha;
    return std::exp(-s * s / (2.0 * a2)) / (a2 * alpha * sqrt_2pi) * (s * s / a2 - 1.0);
}

double lowpass_laplacian_coeffs(double b, long l) {
    const double b3 = b * b * b;
    if (l == 0) return -sqrt_2_over_pi * b3 / 3.0;
    const double ll = static_cast<double>(l);
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    return -sqrt_2_over_pi * b3 * 2.0 * sign / (pi * pi * ll * ll);
}

double ramlak_laplacian_coeffs(double b, long l) {
    if (b > 1.0) {
        std::cerr << "warning: ramlak bandwidth " << b << " > 1 clamped to 1\n";
        b = 1.0;
    }
    const double b3 = b * b * b;
    if (l == 0) return sqrt_2_over_pi * b3 * (3.0 * b - 4.0) / 12.0;
    const double ll = static_cast<double>(l);
    const double l2 = pi * pi * ll * ll;
    if (l % 2 == 0) return sqrt_2_over_pi * b3 * (3.0 * b - 2.0) / l2;
    return sqrt_2_over_pi * b3 * (-(3.0 * b - 2.0) / l2 + 12.0 * b / (l2 * l2));
}

DataFilter sample_filter(const FeatureKernel& kernel, double pitch, std::size_t n_radial) {
    kernel.validate();
    if (kernel.kind == KernelKind::tabulated)
        throw std::invalid_argument("sample_filter: tabulated filters carry their own values");
    if (!(pitch > 0.0)) throw std::invalid_argument("sample_filter: pitch must be positive");
    std::vector<double> prof;
    if (!kernel.band_limited()) {
        const auto r = static_cast<long>(std::ceil(gaussian_support * kernel.alpha / pitch));
        prof.resize(static_cast<std::size_t>(2 * r + 1));
        for (long l = -r; l <= r; ++l) {
            const double s = static_cast<double>(l) * pitch;
            double v = 0.0;
            switch (kernel.kind) {
                case KernelKind::gaussian: v = radon_of_gaussian(kernel.alpha, s); break;
                case KernelKind::gaussian_gradient: v = grad_data_filter(kernel.alpha, 0.0, s)[0]; break;
                default: v = log_data_filter(kernel.alpha, s); break;
            }
            prof[static_cast<std::size_t>(l + r)] = v;
        }
        return DataFilter(kernel, pitch, std::move(prof));
    }

    double b = kernel.b;
    if (kernel.kind == KernelKind::ramlak_laplacian && b > 1.0) {
        std::cerr << "warning: ramlak bandwidth " << b << " > 1 clamped to 1\n";
        b = 1.0;
    }
    FeatureKernel used = kernel;
    used.b = b;
    const double natural = pi / b;
    double unit = kernel.frequency_unit;
    if (unit == 0.0) {
        unit = natural / pitch;
    } else if (std::abs(natural / unit - pitch) > 1e-9 * pitch) {
        throw std::invalid_argument("sample_filter: band-limited kernel needs pitch pi/(b*unit)");
    }
    used.frequency_unit = unit;
    const double scale = std::pow(unit, dilation_power(kernel.kind));
    const auto r = static_cast<long>(2 * n_radial);
    prof.resize(static_cast<std::size_t>(2 * r + 1));
    for (long l = -r; l <= r; ++l) {
        double v = 0.0;
        switch (kernel.kind) {
            case KernelKind::lowpass: v = lowpass_coeffs(b, l); break;
            case KernelKind::lowpass_laplacian: v = lowpass_laplacian_coeffs(b, l); break;
            default: v = ramlak_laplacian_coeffs(b, l); break;
        }
        prof[static_cast<std::size_t>(l + r)] = scale * v;
    }
    return DataFilter(used, pitch, std::move(prof));
}

DataFilter sample_filter(const FeatureKernel& kernel, const SamplingSpec& spec) {
    return sample_filter(kernel, spec.pitch(), spec.n_radial());
}

std::string to_string(FbpKind k) {
    switch (k) {
        case FbpKind::grad: return "gradient";
        case FbpKind::log: return "log";
        case FbpKind::ramp: return "ramp";
    }
    return "unknown";
}

FbpKind fbp_kind_from_string(const std::string& s) {
    if (s == "gradient" || s == "grad") return FbpKind::grad;
    if (s == "log") return FbpKind::log;
    if (s == "ramp") return FbpKind::ramp;
    throw std::invalid_argument("unknown FBP filter kind '" + s + "'");
}

Apodization apodization_from_string(const std::string& s) {
    if (s == "none") return Apodization::none;
    if (s == "gaussian") return Apodization::gaussian;
    if (s == "lowpass") return Apodization::lowpass;
    throw std::invalid_argument("unknown apodization '" + s + "'");
}

FbpFilter FbpFilter::grad(double alpha) { return {FbpKind::grad, alpha, Apodization::gaussian, 0.0}; }
FbpFilter FbpFilter::log(double alpha) { return {FbpKind::log, alpha, Apodization::gaussian, 0.0}; }
FbpFilter FbpFilter::ramp(Apodization apod, double p) {
    FbpFilter f{FbpKind::ramp, 0.0, apod, 0.0};
    if (apod == Apodization::gaussian) f.alpha = p;
    if (apod == Apodization::lowpass) f.cutoff = p;
    return f;
}

void FbpFilter::validate() const {
    if (kind != FbpKind::ramp || apodization == Apodization::gaussian) require_alpha(alpha);
    if (kind == FbpKind::ramp && apodization == Apodization::lowpass && !(cutoff > 0.0))
        throw std::invalid_argument("fbp filter: lowpass cutoff must be positive");
}

std::array<cplx, 2> fbp_filter_response(FbpKind kind, double alpha, double phi, double omega) {
    const double w = std::abs(omega);
    const double gauss = std::exp(-alpha * alpha * omega * omega / 2.0);
    switch (kind) {
        case FbpKind::grad: {
            const double m = omega * w * gauss / (4.0 * pi);
            return {cplx(0.0, m * std::cos(phi)), cplx(0.0, m * std::sin(phi))};
        }
        case FbpKind::log: return {cplx(-w * w * w * gauss / (4.0 * pi), 0.0), cplx(0.0, 0.0)};
        case FbpKind::ramp: return {cplx(w * gauss / (4.0 * pi), 0.0), cplx(0.0, 0.0)};
    }
    return {};
}

cplx FbpFilter::response(std::size_t c, double phi, double omega) const {
    if (kind != FbpKind::ramp) return fbp_filter_response(kind, alpha, phi, omega)[c];
    double window = 1.0;
    if (apodization == Apodization::gaussian) window = std::exp(-alpha * alpha * omega * omega / 2.0);
    if (apodization == Apodization::lowpass) window = std::abs(omega) <= cutoff ? 1.0 : 0.0;
    return cplx(std::abs(omega) / (4.0 * pi) * window, 0.0);
}

}  // namespace tomofeat
