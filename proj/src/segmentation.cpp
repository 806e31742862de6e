#include "gait/segmentation.h"

#include <algorithm>
#include <string>

namespace gait {

std::vector<RowRange> balanced_row_ranges(int height, int k) {
  if (k < 1 || k > height) {
    throw UsageError("segment count " + std::to_string(k) + " must lie in [1, " + std::to_string(height) + "]");
  }
  const int base = height / k;
  const int extra = height % k;
  std::vector<RowRange> ranges;
  ranges.reserve(static_cast<std::size_t>(k));
  int begin = 0;
  for (int i = 0; i < k; ++i) {
    const int rows = base + (i < extra ? 1 : 0);
    ranges.push_back({begin, begin + rows});
    begin += rows;
  }
  return ranges;
}

SegmentedAEI segment_image(const RealImage& image, int k) {
  SegmentedAEI out;
  out.row_ranges = balanced_row_ranges(image.height(), k);
  out.segments.reserve(out.row_ranges.size());
  for (const RowRange& range : out.row_ranges) {
    RealImage strip(image.width(), range.rows());
    for (int y = range.begin; y < range.end; ++y) {
      const auto src = image.row(y);
      std::copy(src.begin(), src.end(), strip.row(y - range.begin).begin());
    }
    out.segments.push_back(std::move(strip));
  }
  return out;
}

SegmentedAEI segment_aei(const ActiveEnergyImage& aei, int k) { return segment_image(aei.values, k); }

}  // namespace gait
