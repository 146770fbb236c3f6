#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tomofeat/sampling.hpp"

namespace tomofeat {

/// Square pixel grid over [-extent, extent]^2. Pixel centers sit on
/// x_i = -extent + i * pitch with pitch = 2 * extent / (n - 1), so the outer
/// pixel centers lie on the boundary of the square.
struct Grid {
    std::size_t n = 0;
    double extent = 1.0;

    Grid() = default;
    Grid(std::size_t n_, double extent_);

    double pitch() const { return 2.0 * extent / static_cast<double>(n - 1); }
    double coord(std::size_t i) const { return -extent + static_cast<double>(i) * pitch(); }
    std::size_t size() const { return n * n; }

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Scalar or 2-channel field on a Grid. Storage is channel-major, then row
/// (y index) major, then column (x index).
class Image {
public:
    Image() = default;
    Image(Grid grid, std::size_t channels = 1);

    const Grid& grid() const { return grid_; }
    std::size_t channels() const { return channels_; }
    std::size_t n() const { return grid_.n; }

    double& at(std::size_t c, std::size_t row, std::size_t col) {
        return data_[(c * grid_.n + row) * grid_.n + col];
    }
    double at(std::size_t c, std::size_t row, std::size_t col) const {
        return data_[(c * grid_.n + row) * grid_.n + col];
    }
    double& operator()(std::size_t row, std::size_t col) { return at(0, row, col); }
    double operator()(std::size_t row, std::size_t col) const { return at(0, row, col); }

    std::span<double> channel(std::size_t c) { return {data_.data() + c * grid_.size(), grid_.size()}; }
    std::span<const double> channel(std::size_t c) const {
        return {data_.data() + c * grid_.size(), grid_.size()};
    }
    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }

    /// Single channel copy.
    Image channel_image(std::size_t c) const;
    /// Stack equally gridded single-channel images.
    static Image stack(const std::vector<Image>& parts);

private:
    Grid grid_;
    std::size_t channels_ = 1;
    std::vector<double> data_;
};

/// Radon samples for the measured angles of a SamplingSpec. Storage is
/// channel-major, then angle, then radial sample.
class Sinogram {
public:
    Sinogram(SamplingSpec spec, std::size_t channels = 1);

    const SamplingSpec& spec() const { return spec_; }
    std::size_t channels() const { return channels_; }
    std::size_t n_angles() const { return spec_.n_angles(); }
    std::size_t n_samples() const { return spec_.n_samples(); }

    double& at(std::size_t c, std::size_t j, std::size_t k) {
        return data_[(c * n_angles() + j) * n_samples() + k];
    }
    double at(std::size_t c, std::size_t j, std::size_t k) const {
        return data_[(c * n_angles() + j) * n_samples() + k];
    }
    std::span<double> row(std::size_t c, std::size_t j) {
        return {data_.data() + (c * n_angles() + j) * n_samples(), n_samples()};
    }
    std::span<const double> row(std::size_t c, std::size_t j) const {
        return {data_.data() + (c * n_angles() + j) * n_samples(), n_samples()};
    }
    std::span<double> channel(std::size_t c) {
        return {data_.data() + c * n_angles() * n_samples(), n_angles() * n_samples()};
    }
    std::span<const double> channel(std::size_t c) const {
        return {data_.data() + c * n_angles() * n_samples(), n_angles() * n_samples()};
    }
    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }

    Sinogram channel_sinogram(std::size_t c) const;

private:
    SamplingSpec spec_;
    std::size_t channels_;
    std::vector<double> data_;
};

/// Euclidean helpers over flat value arrays.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double max_abs(std::span<const double> a);
/// ||a - b|| / ||b||.
double rel_l2(std::span<const double> a, std::span<const double> b);

}  // namespace tomofeat
