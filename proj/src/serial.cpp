#include "gait/serial.h"

#include <cmath>

namespace gait::serial {

ActiveEnergyImage active_energy_image(const GaitSequence& sequence) {
  const auto diffs = difference_images(sequence);
  RealImage sum(sequence.width(), sequence.height());
  for (const auto& d : diffs) {
    for (int y = 0; y < sum.height(); ++y) {
      for (int x = 0; x < sum.width(); ++x) sum(x, y) += d.values(x, y);
    }
  }
  const double n = static_cast<double>(diffs.size());
  for (int y = 0; y < sum.height(); ++y) {
    for (int x = 0; x < sum.width(); ++x) sum(x, y) /= n;
  }
  return {std::move(sum), static_cast<int>(diffs.size())};
}

std::optional<CentralMoments> central_moments(const RealImage& image) {
  double m00 = 0.0, m10 = 0.0, m01 = 0.0;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const double v = image(x, y);
      if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("moment input must be finite and nonnegative");
      m00 += v;
      m10 += x * v;
      m01 += y * v;
    }
  }
  if (m00 <= 0.0) return std::nullopt;

  CentralMoments out;
  out.mass = m00;
  out.centroid_x = m10 / m00;
  out.centroid_y = m01 / m00;
  for (int a = 0; a <= kMaxMomentOrder; ++a) {
    for (int b = 0; a + b <= kMaxMomentOrder; ++b) {
      double mu = 0.0;
      for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
          mu += std::pow(x - out.centroid_x, a) * std::pow(y - out.centroid_y, b) * image(x, y);
        }
      }
      out.mu(a, b) = mu;
    }
  }
  return out;
}

RealImage apply_affine(const RealImage& image, const AffineTransform& t, int out_width, int out_height) {
  const AffineTransform inv = t.inverse();
  RealImage out(out_width, out_height);
  auto pixel = [&](int x, int y) {
    return x < 0 || y < 0 || x >= image.width() || y >= image.height() ? 0.0 : image(x, y);
  };
  for (int v = 0; v < out_height; ++v) {
    for (int u = 0; u < out_width; ++u) {
      const auto [x, y] = inv.apply(u, v);
      const int x0 = static_cast<int>(std::floor(x));
      const int y0 = static_cast<int>(std::floor(y));
      const double wx = x - x0;
      const double wy = y - y0;
      out(u, v) = (1 - wx) * (1 - wy) * pixel(x0, y0) + wx * (1 - wy) * pixel(x0 + 1, y0) +
                  (1 - wx) * wy * pixel(x0, y0 + 1) + wx * wy * pixel(x0 + 1, y0 + 1);
    }
  }
  return out;
}

DistanceTensor distance_tensor(std::span<const WhitenedSegment> probe, const WhitenedGallery& gallery) {
  std::vector<int> counts;
  for (const auto& person : gallery) counts.push_back(static_cast<int>(person.size()));
  const int segments = static_cast<int>(probe.size());
  DistanceTensor d(counts, segments);
  for (int n = 0; n < d.persons(); ++n) {
    for (int s = 0; s < d.sequences(n); ++s) {
      for (int k = 0; k < segments; ++k) {
        const auto& g = gallery[n][s].at(static_cast<std::size_t>(k));
        const auto& p = probe[k];
        if (g.degenerate || p.degenerate) {
          d.set_pending(n, s, k, g.degenerate != p.degenerate);
          continue;
        }
        if (g.values.size() != p.values.size()) throw UsageError("feature dimension mismatch");
        double sum = 0.0;
        for (std::size_t j = 0; j < p.values.size(); ++j) sum += (p.values[j] - g.values[j]) * (p.values[j] - g.values[j]);
        d.at(n, s, k) = std::sqrt(sum);
      }
    }
  }
  return d;
}

}  // namespace gait::serial
