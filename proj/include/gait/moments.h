#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "gait/image.h"
#include "gait/segmentation.h"

namespace gait {

inline constexpr int kMaxMomentOrder = 4;
inline constexpr std::size_t kAmiCount = 10;

// Central moments mu_ab for a + b <= 4, taken about the intensity centroid.
// x is the column index and y the row index.
struct CentralMoments {
  double mass = 0.0;  // m00
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  std::array<double, 25> table{};  // table[a * 5 + b]; entries with a + b > 4 stay 0

  double mu(int a, int b) const { return table[static_cast<std::size_t>(a * 5 + b)]; }
  double& mu(int a, int b) { return table[static_cast<std::size_t>(a * 5 + b)]; }
};

struct AmiVector {
  std::array<double, kAmiCount> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  bool operator==(const AmiVector&) const = default;
};

// Per-segment feature. Degenerate segments (zero mass) carry a zero vector.
struct SegmentFeature {
  AmiVector ami;
  bool degenerate = false;
  bool operator==(const SegmentFeature&) const = default;
};

// u = a0 + a1 x + a2 y,  v = b0 + b1 x + b2 y
struct AffineTransform {
  double a0 = 0.0, a1 = 1.0, a2 = 0.0;
  double b0 = 0.0, b1 = 0.0, b2 = 1.0;

  double determinant() const { return a1 * b2 - a2 * b1; }
  // Throws UsageError if the transform is degenerate.
  AffineTransform inverse() const;
  std::array<double, 2> apply(double x, double y) const { return {a0 + a1 * x + a2 * y, b0 + b1 * x + b2 * y}; }

  static AffineTransform translation(double dx, double dy) { return {dx, 1.0, 0.0, dy, 0.0, 1.0}; }
  // Linear part [[l00, l01], [l10, l11]] applied about the point (cx, cy).
  static AffineTransform about_point(double l00, double l01, double l10, double l11, double cx, double cy);
};

// Geometric moments up to order 4 about the centroid. Returns nullopt for an
// all-zero image. Throws UsageError on negative or non-finite pixels.
// Row sums run in parallel and are reduced in row order, so results do not
// depend on the thread count.
std::optional<CentralMoments> central_moments(const RealImage& image);

// Re-centres moments about (centroid + (dx, dy)) by the binomial shift rule.
CentralMoments shift_moments(const CentralMoments& moments, double dx, double dy);

// The ten affine moment invariants A1..A10. Throws UsageError when mass <= 0.
//   A1  = (mu20 mu02 - mu11^2) / mu00^4
//   A2  third-order only, / mu00^10
//   A3  second/third order, / mu00^7
//   A4  second/third order, / mu00^11
//   A5  = (mu40 mu04 - 4 mu31 mu13 + 3 mu22^2) / mu00^6
//   A6  fourth order, / mu00^9
//   A7  second/fourth order, / mu00^7
//   A8  second/fourth order, / mu00^10
//   A9  second/third/fourth order, / mu00^10
//   A10 second/fourth order, / mu00^10
// A1..A9 are functionally independent; at most nine independent invariants
// exist for moments of order <= 4, so A10 is algebraically dependent on them.
AmiVector ami_vector(const CentralMoments& moments);

// Inverse-mapped resampling: output(u, v) = input(t^-1(u, v)) with bilinear
// interpolation; samples outside the input read as 0.
RealImage apply_affine(const RealImage& image, const AffineTransform& t, int out_width, int out_height);

SegmentFeature segment_feature(const RealImage& segment);
std::vector<SegmentFeature> features_from_segmented(const SegmentedAEI& segmented);

}  // namespace gait
