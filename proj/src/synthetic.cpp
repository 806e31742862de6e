#include "gait/synthetic.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

namespace gait {
namespace {

struct Point {
  double x;
  double y;
};

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over the combined words
  std::uint64_t z = a * 0x9E3779B97F4A7C15ULL + b + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Convex quadrilateral, vertices in order.
struct Quad {
  std::array<Point, 4> v;

  bool contains(Point p) const {
    bool pos = false, neg = false;
    for (int i = 0; i < 4; ++i) {
      const Point a = v[i];
      const Point b = v[(i + 1) % 4];
      const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
      pos = pos || cross > 0;
      neg = neg || cross < 0;
    }
    return !(pos && neg);
  }
};

// Tapered limb segment from `from` (width w0) to `to` (width w1).
Quad limb(Point from, Point to, double w0, double w1) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double len = std::hypot(dx, dy);
  const double nx = len > 0 ? -dy / len : 1.0;
  const double ny = len > 0 ? dx / len : 0.0;
  return Quad{{Point{from.x + nx * w0 / 2, from.y + ny * w0 / 2}, Point{to.x + nx * w1 / 2, to.y + ny * w1 / 2},
               Point{to.x - nx * w1 / 2, to.y - ny * w1 / 2}, Point{from.x - nx * w0 / 2, from.y - ny * w0 / 2}}};
}

void require(bool ok, const char* what) {
  if (!ok) throw UsageError(std::string("synthetic walker: ") + what);
}

}  // namespace

void SyntheticWalkerSpec::validate() const {
  require(swing_amplitude >= 0.0 && swing_amplitude <= 30.0, "swing amplitude must lie in [0, 30]");
  require(stride_period >= 4 && stride_period <= 64, "stride period must lie in [4, 64]");
  require(torso_width >= 8.0 && torso_width <= 40.0, "torso width must lie in [8, 40]");
  require(torso_height >= 20.0 && torso_height <= 60.0, "torso height must lie in [20, 60]");
  require(head_radius >= 3.0 && head_radius <= 14.0, "head radius must lie in [3, 14]");
  require(leg_width >= 3.0 && leg_width <= 16.0, "leg width must lie in [3, 16]");
  require(knee_bend >= 0.0 && knee_bend <= 1.0, "knee bend must lie in [0, 1]");
  require(std::isfinite(phase), "phase must be finite");
  require(noise_rate >= 0.0 && noise_rate <= 0.05, "noise rate must lie in [0, 0.05]");
  require(width >= 16 && height >= 32, "canvas must be at least 16x32");
  require(2.0 + 2.0 * head_radius + torso_height < 0.8 * height, "head and torso leave no room for legs");
}

GaitSequence generate_synthetic(const SyntheticWalkerSpec& spec, int n_frames) {
  spec.validate();
  require(n_frames >= 2, "need at least 2 frames");

  const double cx = spec.width / 2.0;
  const double head_cy = 2.0 + spec.head_radius;
  const double torso_top = head_cy + spec.head_radius - 1.0;
  const double torso_cy = torso_top + spec.torso_height / 2.0;
  const double hip_y = torso_top + 0.85 * spec.torso_height;
  const double shoulder_y = torso_top + 0.12 * spec.torso_height;
  const double foot_floor = spec.height - 2.0;
  const double leg_length = foot_floor - hip_y;
  const double arm_length = 0.8 * spec.torso_height;
  const double hip_dx = spec.torso_width * 0.2;
  const double shoulder_dx = spec.torso_width * 0.5;

  std::mt19937_64 rng(spec.seed);
  GaitSequence sequence;
  sequence.frames.reserve(static_cast<std::size_t>(n_frames));

  for (int t = 0; t < n_frames; ++t) {
    const double phi = 2.0 * std::numbers::pi * t / spec.stride_period + spec.phase;

    std::vector<Quad> quads;
    for (int side = 0; side < 2; ++side) {
      const double swing = (side == 0 ? 1.0 : -1.0) * std::sin(phi);
      const double lift = std::max(0.0, (side == 0 ? 1.0 : -1.0) * std::cos(phi));

      const Point hip{cx + (side == 0 ? -hip_dx : hip_dx), hip_y};
      const double foot_dx = spec.swing_amplitude * swing;
      const double drop = std::sqrt(std::max(leg_length * leg_length - foot_dx * foot_dx, 1.0));
      const Point foot{hip.x + foot_dx, hip.y + drop - lift * spec.knee_bend * spec.swing_amplitude * 0.3};
      const Point knee{(hip.x + foot.x) / 2.0 + lift * spec.knee_bend * spec.swing_amplitude,
                       (hip.y + foot.y) / 2.0};
      quads.push_back(limb(hip, knee, spec.leg_width, spec.leg_width * 0.8));
      quads.push_back(limb(knee, foot, spec.leg_width * 0.8, spec.leg_width * 0.6));

      // arms swing against the leg on the same side
      const Point shoulder{cx + (side == 0 ? -shoulder_dx : shoulder_dx), shoulder_y};
      const double hand_dx = -0.6 * spec.swing_amplitude * swing;
      const Point hand{shoulder.x + hand_dx,
                       shoulder.y + std::sqrt(std::max(arm_length * arm_length - hand_dx * hand_dx, 1.0))};
      quads.push_back(limb(shoulder, hand, spec.leg_width * 0.55, spec.leg_width * 0.4));
    }

    SilhouetteFrame frame(spec.width, spec.height);
    const double a = spec.torso_width / 2.0;
    const double b = spec.torso_height / 2.0;
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        const Point p{x + 0.5, y + 0.5};
        const double hx = p.x - cx, hy = p.y - head_cy;
        const double ex = (p.x - cx) / a, ey = (p.y - torso_cy) / b;
        bool on = hx * hx + hy * hy <= spec.head_radius * spec.head_radius || ex * ex + ey * ey <= 1.0;
        for (std::size_t q = 0; q < quads.size() && !on; ++q) on = quads[q].contains(p);
        if (spec.noise_rate > 0.0 && unit(rng) < spec.noise_rate) on = !on;
        frame.set(x, y, on);
      }
    }
    sequence.frames.push_back(std::move(frame));
  }
  return sequence;
}

SyntheticWalkerSpec subject_walker(std::uint64_t dataset_seed, int subject) {
  std::mt19937_64 rng(mix(dataset_seed, static_cast<std::uint64_t>(subject)));
  SyntheticWalkerSpec spec;
  spec.swing_amplitude = uniform(rng, 6.0, 22.0);
  spec.stride_period = 10 + static_cast<int>(rng() % 15);
  spec.torso_width = uniform(rng, 12.0, 26.0);
  spec.torso_height = uniform(rng, 28.0, 44.0);
  spec.head_radius = uniform(rng, 5.0, 10.0);
  spec.leg_width = uniform(rng, 5.0, 12.0);
  spec.knee_bend = uniform(rng, 0.1, 0.8);
  return spec;
}

SyntheticWalkerSpec sequence_walker(const SyntheticWalkerSpec& subject_spec, std::uint64_t dataset_seed, int subject,
                                    int sequence) {
  std::mt19937_64 rng(mix(mix(dataset_seed, static_cast<std::uint64_t>(subject)),
                          0x5EC0000ULL + static_cast<std::uint64_t>(sequence)));
  SyntheticWalkerSpec spec = subject_spec;
  spec.seed = rng();
  spec.phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return spec;
}

void write_synthetic_dataset(const std::filesystem::path& root, const SyntheticDatasetOptions& options) {
  if (options.subjects < 1 || options.sequences < 1) throw UsageError("need at least one subject and sequence");
  char name[32];
  for (int n = 0; n < options.subjects; ++n) {
    SyntheticWalkerSpec subject = subject_walker(options.seed, n);
    subject.noise_rate = options.noise_rate;
    subject.width = options.width;
    subject.height = options.height;
    std::snprintf(name, sizeof(name), "subject_%03d", n);
    const auto subject_dir = root / name;
    for (int s = 0; s < options.sequences; ++s) {
      const SyntheticWalkerSpec spec = sequence_walker(subject, options.seed, n, s);
      std::snprintf(name, sizeof(name), "seq_%02d", s);
      save_sequence(generate_synthetic(spec, options.frames), subject_dir / name);
    }
  }
}

}  // namespace gait
