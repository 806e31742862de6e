// Times each OpenMP kernel against its serial reference.
//   bench_kernels [repetitions]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include "gait/energy_image.h"
#include "gait/matching.h"
#include "gait/moments.h"
#include "gait/serial.h"
#include "gait/synthetic.h"

namespace {

double time_ms(int reps, const std::function<void()>& fn) {
  fn();  // warm-up
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void report(const char* name, double parallel_ms, double serial_ms) {
  std::printf("%-22s parallel %9.3f ms   serial %9.3f ms   speedup %5.2fx\n", name, parallel_ms, serial_ms,
              serial_ms / parallel_ms);
}

gait::RealImage blob(int size) {
  gait::RealImage img(size, size);
  const double c = size / 2.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = (x - c) / (0.12 * size), dy = (y - c * 0.9) / (0.08 * size);
      img(x, y) = std::exp(-0.5 * (dx * dx + dy * dy));
    }
  }
  return img;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 5;
  std::printf("threads: %d, repetitions: %d\n", omp_get_max_threads(), reps);

  const gait::RealImage image = blob(512);
  volatile double sink = 0.0;
  report("central_moments 512^2",
         time_ms(reps, [&] { sink = sink + gait::central_moments(image)->mu(2, 0); }),
         time_ms(reps, [&] { sink = sink + gait::serial::central_moments(image)->mu(2, 0); }));

  const auto t = gait::AffineTransform::about_point(0.9, 0.3, -0.2, 1.1, 256, 256);
  report("apply_affine 512^2", time_ms(reps, [&] { sink = sink + gait::apply_affine(image, t, 512, 512)(256, 256); }),
         time_ms(reps, [&] { sink = sink + gait::serial::apply_affine(image, t, 512, 512)(256, 256); }));

  gait::SyntheticWalkerSpec spec;
  spec.noise_rate = 0.01;
  const auto sequence = gait::generate_synthetic(spec, 120);
  report("active_energy_image",
         time_ms(reps, [&] { sink = sink + gait::active_energy_image(sequence).values(32, 100); }),
         time_ms(reps, [&] { sink = sink + gait::serial::active_energy_image(sequence).values(32, 100); }));

  // 124 persons x 5 sequences x 23 segments x 5 dims, the largest table setting.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  auto segment = [&] {
    gait::WhitenedSegment s;
    for (int j = 0; j < 5; ++j) s.values.push_back(normal(rng));
    return s;
  };
  gait::WhitenedGallery gallery(124, gait::WhitenedPerson(5));
  for (auto& person : gallery) {
    for (auto& seq : person) {
      for (int k = 0; k < 23; ++k) seq.push_back(segment());
    }
  }
  std::vector<gait::WhitenedSegment> probe;
  for (int k = 0; k < 23; ++k) probe.push_back(segment());
  report("distance_tensor", time_ms(reps * 20, [&] { sink = sink + gait::distance_tensor(probe, gallery).at(0, 0, 0); }),
         time_ms(reps * 20, [&] { sink = sink + gait::serial::distance_tensor(probe, gallery).at(0, 0, 0); }));
  return 0;
}
