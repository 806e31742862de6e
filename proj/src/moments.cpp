#include "gait/moments.h"

#include <cmath>
#include <string>

namespace gait {
namespace {

// Below this many pixels the OpenMP fork costs more than the loop.
constexpr std::size_t kParallelPixelThreshold = 1 << 15;

constexpr int kTableSide = kMaxMomentOrder + 1;

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

AffineTransform AffineTransform::inverse() const {
  const double det = determinant();
  if (det == 0.0 || !std::isfinite(det)) throw UsageError("affine transform is degenerate");
  AffineTransform inv;
  inv.a1 = b2 / det;
  inv.a2 = -a2 / det;
  inv.b1 = -b1 / det;
  inv.b2 = a1 / det;
  inv.a0 = -(inv.a1 * a0 + inv.a2 * b0);
  inv.b0 = -(inv.b1 * a0 + inv.b2 * b0);
  return inv;
}

AffineTransform AffineTransform::about_point(double l00, double l01, double l10, double l11, double cx, double cy) {
  return {cx - l00 * cx - l01 * cy, l00, l01, cy - l10 * cx - l11 * cy, l10, l11};
}

std::optional<CentralMoments> central_moments(const RealImage& image) {
  const int width = image.width();
  const int height = image.height();
  const bool parallel = image.size() >= kParallelPixelThreshold;

  // Pass 1: raw moments of order <= 1, per row.
  std::vector<std::array<double, 3>> raw(static_cast<std::size_t>(height));
  bool valid = true;
#pragma omp parallel for schedule(static) if (parallel) reduction(&& : valid)
  for (int y = 0; y < height; ++y) {
    double m00 = 0.0, m10 = 0.0;
    for (int x = 0; x < width; ++x) {
      const double v = image(x, y);
      if (!(v >= 0.0) || !std::isfinite(v)) valid = false;
      m00 += v;
      m10 += x * v;
    }
    raw[y] = {m00, m10, static_cast<double>(y) * m00};
  }
  if (!valid) throw UsageError("moment input must be finite and nonnegative");

  double m00 = 0.0, m10 = 0.0, m01 = 0.0;
  for (const auto& r : raw) {
    m00 += r[0];
    m10 += r[1];
    m01 += r[2];
  }
  if (m00 <= 0.0) return std::nullopt;

  CentralMoments out;
  out.mass = m00;
  out.centroid_x = m10 / m00;
  out.centroid_y = m01 / m00;

  // Pass 2: per row, S_a = sum_x dx^a v, then mu_ab += S_a dy^b.
  std::vector<std::array<double, kTableSide * kTableSide>> partial(static_cast<std::size_t>(height));
  const double cx = out.centroid_x;
  const double cy = out.centroid_y;
#pragma omp parallel for schedule(static) if (parallel)
  for (int y = 0; y < height; ++y) {
    std::array<double, kTableSide> s{};
    for (int x = 0; x < width; ++x) {
      const double v = image(x, y);
      if (v == 0.0) continue;
      const double dx = x - cx;
      double p = v;
      for (int a = 0; a < kTableSide; ++a) {
        s[a] += p;
        p *= dx;
      }
    }
    auto& row = partial[y];
    row.fill(0.0);
    const double dy = y - cy;
    for (int a = 0; a < kTableSide; ++a) {
      double q = 1.0;
      for (int b = 0; a + b <= kMaxMomentOrder; ++b) {
        row[a * kTableSide + b] = s[a] * q;
        q *= dy;
      }
    }
  }
  for (const auto& row : partial) {
    for (std::size_t i = 0; i < row.size(); ++i) out.table[i] += row[i];
  }

  // The first-pass centroid carries rounding error; fold the residual first
  // moments back into it so mu10 and mu01 vanish to working precision.
  return shift_moments(out, out.mu(1, 0) / out.mass, out.mu(0, 1) / out.mass);
}

CentralMoments shift_moments(const CentralMoments& moments, double dx, double dy) {
  CentralMoments out = moments;
  out.centroid_x += dx;
  out.centroid_y += dy;
  out.table.fill(0.0);
  for (int a = 0; a < kTableSide; ++a) {
    for (int b = 0; a + b <= kMaxMomentOrder; ++b) {
      double sum = 0.0;
      for (int i = 0; i <= a; ++i) {
        for (int j = 0; j <= b; ++j) {
          sum += binomial(a, i) * binomial(b, j) * std::pow(-dx, a - i) * std::pow(-dy, b - j) * moments.mu(i, j);
        }
      }
      out.mu(a, b) = sum;
    }
  }
  out.mu(0, 0) = moments.mu(0, 0);
  return out;
}

AmiVector ami_vector(const CentralMoments& moments) {
  if (!(moments.mass > 0.0)) throw UsageError("undefined invariants: zero mass");

  // Scale-normalised moments eta_ab = mu_ab / mu00^((a+b)/2 + 1). Every
  // invariant below is homogeneous, so evaluating on eta equals dividing by
  // the matching power of mu00.
  const double m00 = moments.mass;
  auto eta = [&](int a, int b) { return moments.mu(a, b) / std::pow(m00, (a + b) / 2.0 + 1.0); };
  const double m20 = eta(2, 0), m11 = eta(1, 1), m02 = eta(0, 2);
  const double m30 = eta(3, 0), m21 = eta(2, 1), m12 = eta(1, 2), m03 = eta(0, 3);
  const double m40 = eta(4, 0), m31 = eta(3, 1), m22 = eta(2, 2), m13 = eta(1, 3), m04 = eta(0, 4);

  AmiVector a;
  a[0] = m20 * m02 - m11 * m11;

  a[1] = m30 * m30 * m03 * m03 - 6 * m30 * m21 * m12 * m03 + 4 * m30 * m12 * m12 * m12 +
         4 * m21 * m21 * m21 * m03 - 3 * m21 * m21 * m12 * m12;

  a[2] = m20 * m21 * m03 - m20 * m12 * m12 - m11 * m30 * m03 + m11 * m21 * m12 + m02 * m30 * m12 -
         m02 * m21 * m21;

  a[3] = m02 * m02 * m02 * m30 * m30 - 6 * m02 * m02 * m11 * m21 * m30 + 3 * m02 * m02 * m20 * m21 * m21 +
         6 * m02 * m11 * m11 * m12 * m30 + 6 * m02 * m11 * m11 * m21 * m21 -
         12 * m02 * m11 * m12 * m20 * m21 + 3 * m02 * m12 * m12 * m20 * m20 + m03 * m03 * m20 * m20 * m20 -
         2 * m03 * m11 * m11 * m11 * m30 + 6 * m03 * m11 * m11 * m20 * m21 - 6 * m03 * m11 * m12 * m20 * m20 -
         6 * m11 * m11 * m11 * m12 * m21 + 6 * m11 * m11 * m12 * m12 * m20;

  a[4] = m40 * m04 - 4 * m31 * m13 + 3 * m22 * m22;

  a[5] = m40 * m04 * m22 + 2 * m31 * m22 * m13 - m40 * m13 * m13 - m04 * m31 * m31 - m22 * m22 * m22;

  a[6] = m02 * m02 * m40 - 4 * m02 * m11 * m31 + 2 * m02 * m20 * m22 + m04 * m20 * m20 + 4 * m11 * m11 * m22 -
         4 * m11 * m13 * m20;

  a[7] = m02 * m02 * m22 * m40 - m02 * m02 * m31 * m31 + m02 * m04 * m20 * m40 - 2 * m02 * m11 * m13 * m40 +
         2 * m02 * m11 * m22 * m31 - 2 * m02 * m13 * m20 * m31 + m02 * m20 * m22 * m22 -
         2 * m04 * m11 * m20 * m31 + m04 * m20 * m20 * m22 + 4 * m11 * m11 * m13 * m31 -
         4 * m11 * m11 * m22 * m22 + 2 * m11 * m13 * m20 * m22 - m13 * m13 * m20 * m20;

  a[8] = -m02 * m03 * m21 * m40 + m02 * m03 * m30 * m31 + m02 * m12 * m12 * m40 - m02 * m12 * m21 * m31 -
         m02 * m12 * m22 * m30 + m02 * m21 * m21 * m22 + 2 * m03 * m11 * m21 * m31 - 2 * m03 * m11 * m22 * m30 +
         m03 * m13 * m20 * m30 - m03 * m20 * m21 * m22 - m04 * m12 * m20 * m30 + m04 * m20 * m21 * m21 -
         2 * m11 * m12 * m12 * m31 + 2 * m11 * m12 * m13 * m30 + 2 * m11 * m12 * m21 * m22 -
         2 * m11 * m13 * m21 * m21 + m12 * m12 * m20 * m22 - m12 * m13 * m20 * m21;

  a[9] = m02 * m02 * m22 * m40 - m02 * m02 * m31 * m31 - 2 * m02 * m11 * m13 * m40 + 2 * m02 * m11 * m22 * m31 +
         2 * m02 * m13 * m20 * m31 - 2 * m02 * m20 * m22 * m22 + m04 * m11 * m11 * m40 -
         2 * m04 * m11 * m20 * m31 + m04 * m20 * m20 * m22 - m11 * m11 * m22 * m22 + 2 * m11 * m13 * m20 * m22 -
         m13 * m13 * m20 * m20;
  return a;
}

RealImage apply_affine(const RealImage& image, const AffineTransform& t, int out_width, int out_height) {
  const AffineTransform inv = t.inverse();
  RealImage out(out_width, out_height);
  const int width = image.width();
  const int height = image.height();
  auto sample = [&](int x, int y) { return x < 0 || y < 0 || x >= width || y >= height ? 0.0 : image(x, y); };

#pragma omp parallel for schedule(static) if (out.size() >= kParallelPixelThreshold)
  for (int v = 0; v < out_height; ++v) {
    auto dst = out.row(v);
    for (int u = 0; u < out_width; ++u) {
      const auto [x, y] = inv.apply(u, v);
      if (!(x > -1.0 && y > -1.0 && x < width && y < height)) {
        dst[u] = 0.0;
        continue;
      }
      const double fx0 = std::floor(x);
      const double fy0 = std::floor(y);
      const int x0 = static_cast<int>(fx0);
      const int y0 = static_cast<int>(fy0);
      const double wx = x - fx0;
      const double wy = y - fy0;
      double value = (1.0 - wx) * (1.0 - wy) * sample(x0, y0);
      if (wx != 0.0) value += wx * (1.0 - wy) * sample(x0 + 1, y0);
      if (wy != 0.0) value += (1.0 - wx) * wy * sample(x0, y0 + 1);
      if (wx != 0.0 && wy != 0.0) value += wx * wy * sample(x0 + 1, y0 + 1);
      dst[u] = value;
    }
  }
  return out;
}

SegmentFeature segment_feature(const RealImage& segment) {
  const auto moments = central_moments(segment);
  if (!moments) return {AmiVector{}, true};
  return {ami_vector(*moments), false};
}

std::vector<SegmentFeature> features_from_segmented(const SegmentedAEI& segmented) {
  std::vector<SegmentFeature> out;
  out.reserve(segmented.segments.size());
  for (const auto& segment : segmented.segments) out.push_back(segment_feature(segment));
  return out;
}

}  // namespace gait
