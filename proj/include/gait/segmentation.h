#pragma once

#include <vector>

#include "gait/energy_image.h"
#include "gait/image.h"

namespace gait {

// Half-open row interval [begin, end).
struct RowRange {
  int begin = 0;
  int end = 0;
  int rows() const { return end - begin; }
  bool operator==(const RowRange&) const = default;
};

// K horizontal strips, top to bottom, each spanning the full image width.
struct SegmentedAEI {
  std::vector<RealImage> segments;
  std::vector<RowRange> row_ranges;

  int segment_count() const { return static_cast<int>(segments.size()); }
};

// Balanced partition of `height` rows into k strips: the first height % k
// strips get one extra row.
std::vector<RowRange> balanced_row_ranges(int height, int k);

SegmentedAEI segment_image(const RealImage& image, int k);
SegmentedAEI segment_aei(const ActiveEnergyImage& aei, int k);

}  // namespace gait
