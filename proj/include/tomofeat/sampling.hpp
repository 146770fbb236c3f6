#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace tomofeat {

/// Measurement geometry for parallel-beam data.
///
/// The full angle grid is phi_j = j*pi/N_phi (j = 0..N_phi-1); the radial grid
/// is s_l = l * halfwidth / N_s (l = -N_s..N_s). A spec carries an ordered
/// subset of the full angle grid, which is what was actually measured.
class SamplingSpec {
public:
    SamplingSpec(double bandwidth, std::size_t n_angles_full, std::size_t n_radial,
                 double radial_halfwidth, std::vector<std::size_t> angle_subset);

    /// Complete angle set with counts taken from the bandwidth.
    static SamplingSpec from_bandwidth(double bandwidth, double radial_halfwidth);
    /// Complete angle set for explicit counts.
    static SamplingSpec full(double bandwidth, std::size_t n_angles_full, std::size_t n_radial,
                             double radial_halfwidth);

    double bandwidth() const { return bandwidth_; }
    std::size_t n_angles_full() const { return n_angles_full_; }
    std::size_t n_radial() const { return n_radial_; }
    double radial_halfwidth() const { return halfwidth_; }
    const std::vector<std::size_t>& angle_subset() const { return subset_; }

    std::size_t n_angles() const { return subset_.size(); }
    std::size_t n_samples() const { return 2 * n_radial_ + 1; }
    double pitch() const { return halfwidth_ / static_cast<double>(n_radial_); }

    /// Angle of the j-th measured direction (local index into the subset).
    double angle(std::size_t j) const;
    /// Offset of the radial sample with array index k (0..2N_s).
    double offset(std::size_t k) const;
    std::vector<double> angles() const;
    std::vector<double> offsets() const;

    bool is_complete() const { return subset_.size() == n_angles_full_; }
    bool is_fully_sampled() const;

    /// Same geometry with a different angle subset.
    SamplingSpec with_subset(std::vector<std::size_t> subset) const;

    std::string to_header() const;
    static SamplingSpec from_header(const std::string& text);

    friend bool operator==(const SamplingSpec&, const SamplingSpec&) = default;

private:
    double bandwidth_;
    std::size_t n_angles_full_;
    std::size_t n_radial_;
    double halfwidth_;
    std::vector<std::size_t> subset_;
};

struct SamplingCounts {
    std::size_t n_angles;
    std::size_t n_radial;
};

/// Shannon counts (ceil(b), ceil(b/pi)) for an essentially b-band-limited object in the unit disc.
SamplingCounts sampling_counts(double bandwidth);

struct UniformSparse {};
/// Angles of the full grid that fall in [first, last] (radians).
struct LimitedView {
    double first;
    double last;
};

/// Select m directions from the full grid of `full`.
SamplingSpec make_subset(const SamplingSpec& full, std::size_t m, UniformSparse);
SamplingSpec make_subset(const SamplingSpec& full, std::size_t m, LimitedView range);

}  // namespace tomofeat
