#include "tomofeat/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tomofeat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

SamplingSpec::SamplingSpec(double bandwidth, std::size_t n_angles_full, std::size_t n_radial,
                           double radial_halfwidth, std::vector<std::size_t> angle_subset)
    : bandwidth_(bandwidth),
      n_angles_full_(n_angles_full),
      n_radial_(n_radial),
      halfwidth_(radial_halfwidth),
      subset_(std::move(angle_subset)) {
    if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_))
        throw std::invalid_argument("sampling: bandwidth must be positive");
    if (n_angles_full_ == 0) throw std::invalid_argument("sampling: need at least one angle");
    if (n_radial_ == 0) throw std::invalid_argument("sampling: n_radial must be >= 1");
    if (!(halfwidth_ > 0.0) || !std::isfinite(halfwidth_))
        throw std::invalid_argument("sampling: radial half-width must be positive");
    if (subset_.empty()) throw std::invalid_argument("sampling: empty angle subset");
    for (std::size_t k = 0; k < subset_.size(); ++k) {
        if (subset_[k] >= n_angles_full_)
            throw std::invalid_argument("sampling: angle index out of range");
        if (k > 0 && subset_[k] <= subset_[k - 1])
            throw std::invalid_argument("sampling: angle indices must be strictly increasing");
    }
}

SamplingSpec SamplingSpec::full(double bandwidth, std::size_t n_angles_full, std::size_t n_radial,
                                double radial_halfwidth) {
    std::vector<std::size_t> all(n_angles_full);
    for (std::size_t j = 0; j < n_angles_full; ++j) all[j] = j;
    return SamplingSpec(bandwidth, n_angles_full, n_radial, radial_halfwidth, std::move(all));
}

SamplingSpec SamplingSpec::from_bandwidth(double bandwidth, double radial_halfwidth) {
    const auto c = sampling_counts(bandwidth);
    return full(bandwidth, c.n_angles, c.n_radial, radial_halfwidth);
}

double SamplingSpec::angle(std::size_t j) const {
    return static_cast<double>(subset_.at(j)) * std::numbers::pi /
           static_cast<double>(n_angles_full_);
}

double SamplingSpec::offset(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(n_radial_)) * pitch();
}

std::vector<double> SamplingSpec::angles() const {
    std::vector<double> out(subset_.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = angle(j);
    return out;
}

std::vector<double> SamplingSpec::offsets() const {
    std::vector<double> out(n_samples());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = offset(k);
    return out;
}

bool SamplingSpec::is_fully_sampled() const {
    if (!is_complete()) return false;
    const auto need = sampling_counts(bandwidth_);
    return n_angles_full_ >= need.n_angles && n_radial_ >= need.n_radial;
}

SamplingSpec SamplingSpec::with_subset(std::vector<std::size_t> subset) const {
    return SamplingSpec(bandwidth_, n_angles_full_, n_radial_, halfwidth_, std::move(subset));
}

std::string SamplingSpec::to_header() const {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "bandwidth=" << bandwidth_ << '\n';
    os << "n_angles_full=" << n_angles_full_ << '\n';
    os << "n_radial=" << n_radial_ << '\n';
    os << "radial_halfwidth=" << halfwidth_ << '\n';
    os << "angle_subset=";
    for (std::size_t k = 0; k < subset_.size(); ++k) os << (k ? "," : "") << subset_[k];
    os << '\n';
    return os.str();
}

SamplingSpec SamplingSpec::from_header(const std::string& text) {
    double bw = 0, hw = 0;
    std::size_t nphi = 0, ns = 0;
    std::vector<std::size_t> subset;
    bool have_subset = false;
    std::istringstream is(text);
    std::string line;
    try {
        while (std::getline(is, line)) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const auto key = trim(line.substr(0, eq));
            const auto val = trim(line.substr(eq + 1));
            if (key == "bandwidth") bw = std::stod(val);
            else if (key == "n_angles_full") nphi = std::stoul(val);
            else if (key == "n_radial") ns = std::stoul(val);
            else if (key == "radial_halfwidth") hw = std::stod(val);
            else if (key == "angle_subset") {
                have_subset = true;
                std::istringstream ls(val);
                std::string tok;
                while (std::getline(ls, tok, ','))
                    if (!trim(tok).empty()) subset.push_back(std::stoul(trim(tok)));
            }
        }
    } catch (const std::logic_error&) {
        throw std::invalid_argument("sampling header: malformed value in line '" + line + "'");
    }
    if (!have_subset) return full(bw, nphi, ns, hw);
    return SamplingSpec(bw, nphi, ns, hw, std::move(subset));
}

SamplingCounts sampling_counts(double b) {
    if (!(b > 0.0) || !std::isfinite(b))
        throw std::invalid_argument("sampling_counts: bandwidth must be positive");
    return {static_cast<std::size_t>(std::ceil(b)),
            static_cast<std::size_t>(std::ceil(b / std::numbers::pi))};
}

SamplingSpec make_subset(const SamplingSpec& full, std::size_t m, UniformSparse) {
    const std::size_t n = full.n_angles_full();
    if (m < 1 || m > n) throw std::invalid_argument("make_subset: m must be in [1, N_phi]");
    std::vector<std::size_t> idx(m);
    for (std::size_t j = 0; j < m; ++j)
        idx[j] = static_cast<std::size_t>(
            std::llround(static_cast<double>(j) * static_cast<double>(n) / static_cast<double>(m)));
    return full.with_subset(std::move(idx));
}

SamplingSpec make_subset(const SamplingSpec& full, std::size_t m, LimitedView range) {
    const std::size_t n = full.n_angles_full();
    if (m < 1 || m > n) throw std::invalid_argument("make_subset: m must be in [1, N_phi]");
    if (!(range.last >= range.first))
        throw std::invalid_argument("make_subset: empty limited-view range");
    const double step = std::numbers::pi / static_cast<double>(n);
    const double eps = 1e-12 * std::numbers::pi;
    std::vector<std::size_t> inside;
    for (std::size_t j = 0; j < n; ++j) {
        const double phi = static_cast<double>(j) * step;
        if (phi >= range.first - eps && phi <= range.last + eps) inside.push_back(j);
    }
    if (inside.empty()) throw std::invalid_argument("make_subset: limited-view range holds no angle");
    if (m > inside.size())
        throw std::invalid_argument("make_subset: range holds fewer than m angles");
    inside.resize(m);
    return full.with_subset(std::move(inside));
}

}  // namespace tomofeat
