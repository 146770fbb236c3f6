#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tomofeat/edges.hpp"
#include "tomofeat/filters.hpp"
#include "tomofeat/phantom.hpp"
#include "tomofeat/varsolve.hpp"

namespace tomofeat {

/// Invalid or missing configuration values.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PhantomConfig {
    std::vector<Disc> discs = three_disc_layout();
    std::size_t grid_size = 200;
    double extent = 1.0;
};

enum class SubsetScheme { full, uniform_sparse, limited_view };

struct SamplingConfig {
    std::size_t n_radial = 150;
    double radial_halfwidth = 1.5;
    std::optional<double> bandwidth;        // default pi * n_radial
    std::optional<std::size_t> n_angles_full;  // default from the bandwidth
    SubsetScheme scheme = SubsetScheme::uniform_sparse;
    std::size_t n_angles = 40;
    double view_first = 0.0, view_last = 0.0;  // radians, limited view only
    bool analytic = true;  // exact line integrals of the phantom, else the discrete projector

    SamplingSpec full_spec() const;
    SamplingSpec spec() const;
};

struct FilterConfig {
    std::string name = "log";
    KernelKind kind = KernelKind::log;
    std::optional<double> alpha;  // physical width
    double alpha_px = 1.3;        // used when alpha is unset
    double b = 1.0;
    double frequency_unit = 0.0;

    FeatureKernel kernel(double pixel_pitch) const;
};

struct EdgeConfig {
    double zc_threshold = 0.005;
    double canny_low = 0.1;
    double canny_high = 0.15;
};

struct RunConfig {
    std::string name;
    SolverConfig solver;
};

struct Config {
    PhantomConfig phantom;
    SamplingConfig sampling;
    double noise_eta = 0.0;
    std::optional<std::uint64_t> seed;
    std::vector<FilterConfig> filters{FilterConfig{}};
    std::vector<RunConfig> runs{RunConfig{"default", SolverConfig{}}};
    bool fbp_baseline = true;
    EdgeConfig edges;
    std::string out_dir = "out";

    void validate() const;
};

/// INI file with sections [phantom], [sampling], [noise], [filter] or
/// [filter.NAME], [run.NAME], [edges], [pipeline]. An empty path gives defaults.
/// With validate = false the caller applies overrides and calls Config::validate itself.
Config load_config(const std::string& path, bool validate = true);

}  // namespace tomofeat
