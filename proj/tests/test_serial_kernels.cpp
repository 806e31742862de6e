#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omp.h>

#include "gait/serial.h"
#include "oracles/blobs.h"

using namespace gait;

namespace {

GaitSequence random_sequence(std::mt19937_64& rng, int w, int h, int n) {
  GaitSequence seq{"s", "q", {}};
  for (int i = 0; i < n; ++i) {
    SilhouetteFrame f(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) f.set(x, y, (rng() % 3) == 0);
    seq.frames.push_back(f);
  }
  return seq;
}

WhitenedSegment random_segment(std::mt19937_64& rng, int dim) {
  WhitenedSegment s;
  s.degenerate = rng() % 7 == 0;
  if (!s.degenerate)
    for (int i = 0; i < dim; ++i) s.values.push_back(oracle::uniform(rng, -3.0, 3.0));
  else
    s.values.assign(static_cast<std::size_t>(dim), 0.0);
  return s;
}

// Large enough to cross the parallel threshold.
constexpr int kSide = 256;

}  // namespace

TEST_CASE("active energy image matches the serial reference") {
  std::mt19937_64 rng(1);
  const auto seq = random_sequence(rng, kSide, kSide, 5);
  CHECK(active_energy_image(seq).values == serial::active_energy_image(seq).values);
}

TEST_CASE("central moments match the literal definition") {
  std::mt19937_64 rng(2);
  const auto blob = oracle::random_blob(rng, kSide);
  const auto fast = central_moments(blob);
  const auto slow = serial::central_moments(blob);
  REQUIRE(fast);
  REQUIRE(slow);
  CHECK(fast->mass == doctest::Approx(slow->mass).epsilon(1e-12));
  CHECK(fast->centroid_x == doctest::Approx(slow->centroid_x).epsilon(1e-12));
  CHECK(fast->centroid_y == doctest::Approx(slow->centroid_y).epsilon(1e-12));
  for (int p = 2; p <= 4; ++p) {
    const double scale = slow->mass * std::pow(kSide, p);
    for (int q = 0; q <= p; ++q) CHECK(fast->mu(p - q, q) == doctest::Approx(slow->mu(p - q, q)).scale(scale).epsilon(1e-10));
  }
  CHECK_FALSE(serial::central_moments(RealImage(3, 3)).has_value());
}

TEST_CASE("affine resampling matches the serial reference") {
  std::mt19937_64 rng(3);
  const auto blob = oracle::random_blob(rng, kSide);
  for (int i = 0; i < 3; ++i) {
    const auto t = oracle::random_affine(rng, kSide);
    const auto fast = apply_affine(blob, t, kSide, kSide);
    const auto slow = serial::apply_affine(blob, t, kSide, kSide);
    for (std::size_t j = 0; j < fast.size(); ++j) CHECK(fast.values()[j] == doctest::Approx(slow.values()[j]).epsilon(1e-12));
  }
}

TEST_CASE("distance tensor matches the serial reference") {
  std::mt19937_64 rng(4);
  const int dim = 5, segments = 9;
  WhitenedGallery gallery;
  for (int n = 0; n < 40; ++n) {
    WhitenedPerson person;
    for (int s = 0; s < 1 + static_cast<int>(rng() % 4); ++s) {
      WhitenedSequence seq;
      for (int k = 0; k < segments; ++k) seq.push_back(random_segment(rng, dim));
      person.push_back(seq);
    }
    gallery.push_back(person);
  }
  std::vector<WhitenedSegment> probe;
  for (int k = 0; k < segments; ++k) probe.push_back(random_segment(rng, dim));
  CHECK(distance_tensor(probe, gallery) == serial::distance_tensor(probe, gallery));
}

TEST_CASE("results do not depend on the thread count") {
  std::mt19937_64 rng(5);
  const auto blob = oracle::random_blob(rng, kSide);
  const auto seq = random_sequence(rng, kSide, kSide, 3);
  const int saved = omp_get_max_threads();

  omp_set_num_threads(1);
  const auto m1 = central_moments(blob);
  const auto a1 = active_energy_image(seq);
  omp_set_num_threads(4);
  const auto m4 = central_moments(blob);
  const auto a4 = active_energy_image(seq);
  omp_set_num_threads(saved);

  CHECK(m1->table == m4->table);
  CHECK(m1->mass == m4->mass);
  CHECK(a1.values == a4.values);
}
