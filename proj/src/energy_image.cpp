#include "gait/energy_image.h"

#include <algorithm>
#include <cmath>

namespace gait {

std::vector<DifferenceImage> difference_images(const GaitSequence& sequence) {
  validate_sequence(sequence, 2);
  const int width = sequence.width();
  const int height = sequence.height();

  std::vector<DifferenceImage> out;
  out.reserve(sequence.frames.size());
  for (std::size_t j = 0; j < sequence.frames.size(); ++j) {
    RealImage diff(width, height);
    const auto current = sequence.frames[j].pixels().values();
    auto dst = diff.values();
    if (j == 0) {
      for (std::size_t i = 0; i < current.size(); ++i) dst[i] = current[i];
    } else {
      const auto previous = sequence.frames[j - 1].pixels().values();
      for (std::size_t i = 0; i < current.size(); ++i) {
        dst[i] = std::abs(static_cast<int>(current[i]) - static_cast<int>(previous[i]));
      }
    }
    out.push_back({std::move(diff)});
  }
  return out;
}

ActiveEnergyImage active_energy_image(const GaitSequence& sequence) {
  validate_sequence(sequence, 2);
  const int width = sequence.width();
  const int height = sequence.height();
  const int frame_count = static_cast<int>(sequence.frames.size());
  const auto& frames = sequence.frames;

  ActiveEnergyImage aei{RealImage(width, height), frame_count};
  const double n = static_cast<double>(frame_count);

#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    auto dst = aei.values.row(y);
    for (int x = 0; x < width; ++x) {
      int count = frames[0](x, y);
      for (int j = 1; j < frame_count; ++j) {
        count += frames[j](x, y) != frames[j - 1](x, y) ? 1 : 0;
      }
      dst[x] = count / n;
    }
  }
  return aei;
}

GaitEnergyImage gait_energy_image(const GaitSequence& sequence) {
  validate_sequence(sequence, 1);
  const int width = sequence.width();
  const int height = sequence.height();
  std::vector<int> counts(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
  for (const auto& frame : sequence.frames) {
    const auto values = frame.pixels().values();
    for (std::size_t i = 0; i < values.size(); ++i) counts[i] += values[i];
  }
  GaitEnergyImage gei{RealImage(width, height)};
  const double n = static_cast<double>(sequence.frames.size());
  auto dst = gei.values.values();
  for (std::size_t i = 0; i < counts.size(); ++i) dst[i] = counts[i] / n;
  return gei;
}

Grid<std::uint8_t> to_gray8(const RealImage& image) {
  Grid<std::uint8_t> out(image.width(), image.height());
  const auto src = image.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = static_cast<std::uint8_t>(std::clamp(std::lround(src[i] * 255.0), 0L, 255L));
  }
  return out;
}

}  // namespace gait
