#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gait/error.h"

namespace gait {

// Dense row-major 2D grid. x is the column index, y the row index.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw UsageError("grid dimensions must be positive");
    }
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }
  Grid(int width, int height, std::vector<T> values) : width_(width), height_(height), data_(std::move(values)) {
    if (width <= 0 || height <= 0) {
      throw UsageError("grid dimensions must be positive");
    }
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw UsageError("grid value count does not match dimensions");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }

  std::span<T> row(int y) { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
  std::span<const T> row(int y) const { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  bool same_shape(const Grid& other) const { return width_ == other.width_ && height_ == other.height_; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using RealImage = Grid<double>;

// Grayscale raster as decoded from disk; max_value is the format's full scale
// (255 for 8-bit data, up to 65535 for 16-bit).
struct GrayImage {
  Grid<std::uint16_t> pixels;
  int max_value = 255;
};

}  // namespace gait
