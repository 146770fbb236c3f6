#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tomofeat/filters.hpp"
#include "tomofeat/grid.hpp"
#include "tomofeat/xform.hpp"

namespace tomofeat {

/// Raised when an iteration blows up or produces non-finite values.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class StepPolicy { power_iteration, fixed };

struct SolverConfig {
    double lambda = 0.001;
    double mu = 0.0;
    std::size_t max_iters = 500;
    StepPolicy step = StepPolicy::power_iteration;
    double fixed_step = 0.0;  // used with StepPolicy::fixed
    std::size_t power_iters = 30;
    std::uint64_t power_seed = 0;
    bool record_objective = true;
    /// The right-hand side is divided by this before solving and the result
    /// multiplied back, so lambda acts relative to the data range. Unset means
    /// the peak of |rhs| in each channel.
    std::optional<double> data_scale;

    void validate() const;
};

struct ObjectiveTerms {
    double total = 0.0;
    double data = 0.0;  // 1/2 ||R h - rhs||^2
    double h1 = 0.0;    // mu ||grad h||^2
    double l1 = 0.0;    // lambda ||h||_1
};

struct SolveResult {
    Image h;
    std::vector<std::vector<ObjectiveTerms>> trace;  // per channel, per iteration
    std::vector<ObjectiveTerms> initial;             // per channel, at h = 0
    std::size_t iterations = 0;
    double lipschitz = 0.0;
    std::vector<double> data_scale;  // per channel
};

/// u (*)_s y, the data of the feature map.
Sinogram preprocess_rhs(const Sinogram& y, const DataFilter& filt);

double soft_threshold(double x, double tau);
void soft_threshold(std::span<double> x, double tau);
Image soft_threshold(const Image& img, double tau);

/// Forward differences on an n x n array with zero padding outside.
void grad_forward(std::span<const double> h, std::size_t n, std::span<double> gx, std::span<double> gy);
void grad_transpose(std::span<const double> gx, std::span<const double> gy, std::size_t n,
                    std::span<double> out);
/// grad^T grad h.
void grad_normal(std::span<const double> h, std::size_t n, std::span<double> out);
double grad_energy(std::span<const double> h, std::size_t n);

/// R^T (R h - rhs) + 2 mu grad^T grad h, for a single channel.
void smooth_gradient(const RadonOperator& op, std::span<const double> h, std::span<const double> rhs,
                     double mu, std::span<double> out);
Image smooth_gradient(const RadonOperator& op, const Image& h, const Sinogram& rhs, double mu);

ObjectiveTerms objective(const RadonOperator& op, std::span<const double> h, std::span<const double> rhs,
                         double lambda, double mu);

/// Largest eigenvalue of R^T R + 2 mu grad^T grad by power iteration, times 1.01.
double estimate_lipschitz(const RadonOperator& op, double mu, std::size_t iters, std::uint64_t seed);

/// FISTA on an already filtered right-hand side; channels are solved independently.
SolveResult fista_rhs(const RadonOperator& op, const Sinogram& rhs, const SolverConfig& cfg);
/// Filters y with `filt`, then runs FISTA on the grid.
SolveResult fista(const Sinogram& y, const DataFilter& filt, const Grid& grid, const SolverConfig& cfg);

/// Additive i.i.d. Gaussian noise with standard deviation eta * max|y|.
Sinogram add_noise(const Sinogram& y, double eta, std::uint64_t seed);

}  // namespace tomofeat
