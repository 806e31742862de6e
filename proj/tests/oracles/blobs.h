#pragma once

// Smooth random test images and random non-degenerate affine maps.

#include <cmath>
#include <numbers>
#include <random>

#include "gait/moments.h"
#include "oracles/graph_ami.h"

namespace oracle {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// Sum of 3-4 rotated anisotropic Gaussians near the image centre. The
// support stays within ~120 px of the centre so any map with singular
// values below 1.9 keeps it inside a 512 x 512 canvas.
inline gait::RealImage random_blob(std::mt19937_64& rng, int size = 512) {
  struct Lobe {
    double cx, cy, sx, sy, c, s, w;
  };
  const int count = 3 + static_cast<int>(rng() % 2);
  std::vector<Lobe> lobes;
  for (int i = 0; i < count; ++i) {
    const double r = uniform(rng, 25.0, 60.0);
    const double a = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double t = uniform(rng, 0.0, std::numbers::pi);
    lobes.push_back({size / 2.0 + r * std::cos(a), size / 2.0 + r * std::sin(a), uniform(rng, 8.0, 20.0),
                     uniform(rng, 6.0, 14.0), std::cos(t), std::sin(t), uniform(rng, 0.3, 1.0)});
  }
  gait::RealImage img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      double v = 0.0;
      for (const auto& l : lobes) {
        const double dx = x - l.cx, dy = y - l.cy;
        const double u = (l.c * dx + l.s * dy) / l.sx;
        const double w = (-l.s * dx + l.c * dy) / l.sy;
        v += l.w * std::exp(-0.5 * (u * u + w * w));
      }
      img(x, y) = v;
    }
  }
  return img;
}

// Rotation * shear * (optionally reflected) isotropic scale about the canvas
// centre, with |det| in [0.5, 2], shear in [-0.5, 0.5].
inline gait::AffineTransform random_affine(std::mt19937_64& rng, int size = 512) {
  const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double shear = uniform(rng, -0.5, 0.5);
  const double det = uniform(rng, 0.5, 2.0);
  const double s = std::sqrt(det);
  const double flip = (rng() & 1) ? -1.0 : 1.0;
  const double c = std::cos(theta), sn = std::sin(theta);
  // [[c, -sn], [sn, c]] * [[1, shear], [0, 1]] * diag(s, flip * s)
  const double l00 = c * s, l01 = (c * shear - sn) * flip * s;
  const double l10 = sn * s, l11 = (sn * shear + c) * flip * s;
  return gait::AffineTransform::about_point(l00, l01, l10, l11, size / 2.0, size / 2.0);
}

// Relative error is only meaningful away from zero. A blob is generic when
// every invariant's scale-free magnitude |A_i| / A1^(w_i / 2) is at least
// `floor` (w_i = edge count of the generating graph). Computed with the graph
// oracle, not the implementation under test.
inline bool is_generic_blob(const gait::RealImage& img, double floor = 0.01) {
  const auto m = gait::central_moments(img);
  if (!m) return false;
  const auto& graphs = ami_graphs();
  const double a1 = std::abs(evaluate_graph(graphs[0], *m));
  for (const auto& g : graphs) {
    const double scale = std::pow(a1, static_cast<double>(g.edges.size()) / 2.0);
    if (std::abs(evaluate_graph(g, *m)) < floor * scale) return false;
  }
  return true;
}

inline gait::RealImage generic_random_blob(std::mt19937_64& rng, int size = 512) {
  for (;;) {
    gait::RealImage img = random_blob(rng, size);
    if (is_generic_blob(img)) return img;
  }
}

}  // namespace oracle
