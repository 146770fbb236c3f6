#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "tomofeat/fft.hpp"
#include "tomofeat/sampling.hpp"

namespace tomofeat {

enum class KernelKind {
    gaussian,
    gaussian_gradient,
    log,
    lowpass,            // ideal lowpass, identity on its Shannon grid
    lowpass_laplacian,
    ramlak_laplacian,
    tabulated,
};

std::string to_string(KernelKind k);
KernelKind kernel_kind_from_string(const std::string& s);

/// Spatial feature kernel U. Gaussian-family kernels take a physical width
/// alpha. Band-limited kernels take a dimensionless bandwidth b together with a
/// frequency unit Omega (radians per length): the physical kernel is the
/// unit-free one dilated by Omega, so its natural grid has pitch pi / (b Omega).
/// frequency_unit = 0 picks Omega from the sampling pitch.
struct FeatureKernel {
    KernelKind kind = KernelKind::gaussian;
    double alpha = 0.0;
    double b = 0.0;
    double frequency_unit = 0.0;

    static FeatureKernel gaussian(double alpha);
    static FeatureKernel gaussian_gradient(double alpha);
    static FeatureKernel log(double alpha);
    static FeatureKernel lowpass(double b, double frequency_unit = 0.0);
    static FeatureKernel lowpass_laplacian(double b, double frequency_unit = 0.0);
    static FeatureKernel ramlak_laplacian(double b, double frequency_unit = 0.0);

    bool band_limited() const;
    std::size_t channels() const { return kind == KernelKind::gaussian_gradient ? 2 : 1; }
    void validate() const;
};

/// Tabulated data filter u = R U on an s-grid. The stored profile is the
/// common scalar shape; channel c at angle phi is profile * channel_weight(c, phi).
class DataFilter {
public:
    DataFilter(FeatureKernel kernel, double pitch, std::vector<double> profile);
    /// Arbitrary 1-channel filter, centred: profile[radius] sits at s = 0.
    static DataFilter tabulated(double pitch, std::vector<double> profile);

    const FeatureKernel& kernel() const { return kernel_; }
    double pitch() const { return pitch_; }
    std::size_t radius() const { return (profile_.size() - 1) / 2; }
    std::size_t channels() const { return kernel_.channels(); }
    const std::vector<double>& profile() const { return profile_; }

    double channel_weight(std::size_t c, double phi) const;
    /// Coefficient at s = l * pitch, zero outside the support.
    double value(std::size_t c, double phi, long l) const;

private:
    FeatureKernel kernel_;
    double pitch_;
    std::vector<double> profile_;
};

/// Closed-form data filters of the Gaussian family.
double radon_of_gaussian(double alpha, double s);
std::array<double, 2> grad_data_filter(double alpha, double phi, double s);
double log_data_filter(double alpha, double s);

/// Unit-free band-limited coefficients on s_l = pi l / b.
double lowpass_laplacian_coeffs(double b, long l);
/// b > 1 is clamped to 1 (the kernels coincide there) with a warning on stderr.
double ramlak_laplacian_coeffs(double b, long l);

/// Tabulate `kernel` on the radial grid of `spec`.
DataFilter sample_filter(const FeatureKernel& kernel, const SamplingSpec& spec);
DataFilter sample_filter(const FeatureKernel& kernel, double pitch, std::size_t n_radial);

enum class FbpKind { grad, log, ramp };
enum class Apodization { none, gaussian, lowpass };

std::string to_string(FbpKind k);
FbpKind fbp_kind_from_string(const std::string& s);
Apodization apodization_from_string(const std::string& s);

/// Frequency-domain FBP filter W(phi, omega) applied as a multiplier on the
/// unitary transform of the data along s, followed by backprojection.
///   grad: (1/4pi) i omega |omega| exp(-alpha^2 omega^2 / 2) (cos phi, sin phi)
///   log:  -(1/4pi) |omega|^3 exp(-alpha^2 omega^2 / 2)
///   ramp: |omega| / (4pi) times an optional apodization window
struct FbpFilter {
    FbpKind kind = FbpKind::log;
    double alpha = 0.0;
    Apodization apodization = Apodization::gaussian;
    double cutoff = 0.0;  // physical angular frequency for the lowpass window

    static FbpFilter grad(double alpha);
    static FbpFilter log(double alpha);
    static FbpFilter ramp(Apodization apod = Apodization::none, double alpha_or_cutoff = 0.0);

    std::size_t channels() const { return kind == FbpKind::grad ? 2 : 1; }
    cplx response(std::size_t c, double phi, double omega) const;
    void validate() const;
};

std::array<cplx, 2> fbp_filter_response(FbpKind kind, double alpha, double phi, double omega);

}  // namespace tomofeat
