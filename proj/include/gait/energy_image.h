#pragma once

#include <cstdint>
#include <vector>

#include "gait/image.h"
#include "gait/silhouette_io.h"

namespace gait {

// |frame_j - frame_{j-1}| for j > 0; frame 0 itself for j = 0.
struct DifferenceImage {
  RealImage values;
};

// Per-pixel mean of the difference images; values lie on {0, 1/N, ..., 1}.
struct ActiveEnergyImage {
  RealImage values;
  int source_frame_count = 0;

  int width() const { return values.width(); }
  int height() const { return values.height(); }
};

// Per-pixel mean of the silhouettes themselves (baseline template).
struct GaitEnergyImage {
  RealImage values;
};

std::vector<DifferenceImage> difference_images(const GaitSequence& sequence);

// OpenMP-parallel over rows; see serial::active_energy_image for the reference.
ActiveEnergyImage active_energy_image(const GaitSequence& sequence);

GaitEnergyImage gait_energy_image(const GaitSequence& sequence);

// value * 255 rounded, clamped to [0,255].
Grid<std::uint8_t> to_gray8(const RealImage& image);

}  // namespace gait
