#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include "gait/error.h"
#include "gait/moments.h"
#include "oracles/blobs.h"
#include "oracles/graph_ami.h"

using namespace gait;

namespace {

RealImage rectangle(int size, int w, int h) {
  RealImage img(size, size);
  const int x0 = (size - w) / 2, y0 = (size - h) / 2;
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) img(x, y) = 1.0;
  return img;
}

RealImage random_image(std::mt19937_64& rng, int w, int h) {
  RealImage img(w, h);
  for (double& v : img.values()) v = oracle::uniform(rng, 0.0, 1.0);
  return img;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("point mass has zero central moments") {
  RealImage img(6, 5);
  img(3, 2) = 5.0;
  const auto m = central_moments(img);
  REQUIRE(m);
  CHECK(m->mass == 5.0);
  CHECK(m->centroid_x == 3.0);
  CHECK(m->centroid_y == 2.0);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      if (a + b > 0) CHECK(m->mu(a, b) == 0.0);
}

TEST_CASE("rectangle moments approach the continuous closed form") {
  const int w = 300, h = 180;
  const auto m = central_moments(rectangle(512, w, h));
  REQUIRE(m);
  const double mu20 = std::pow(w, 3.0) * h / 12.0;
  const double mu02 = w * std::pow(h, 3.0) / 12.0;
  CHECK(m->mu(2, 0) == doctest::Approx(mu20).epsilon(0.005));
  CHECK(m->mu(0, 2) == doctest::Approx(mu02).epsilon(0.005));
  CHECK(std::abs(m->mu(1, 1)) < 1e-6 * mu20);
  CHECK(ami_vector(*m)[0] == doctest::Approx(1.0 / 144.0).epsilon(0.01));
}

TEST_CASE("first-order central moments vanish") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 5; ++i) {
    const auto img = random_image(rng, 97, 61);
    const auto m = central_moments(img);
    REQUIRE(m);
    const double scale = m->mass * 97.0;
    CHECK(std::abs(m->mu(1, 0)) < 1e-9 * scale);
    CHECK(std::abs(m->mu(0, 1)) < 1e-9 * scale);
  }
}

TEST_CASE("central moments ignore translation of the content") {
  std::mt19937_64 rng(4);
  const auto small = random_image(rng, 20, 15);
  RealImage a(64, 64), b(64, 64);
  for (int y = 0; y < 15; ++y) {
    for (int x = 0; x < 20; ++x) {
      a(x + 3, y + 5) = small(x, y);
      b(x + 40, y + 33) = small(x, y);
    }
  }
  const auto ma = central_moments(a), mb = central_moments(b);
  CHECK(mb->centroid_x - ma->centroid_x == doctest::Approx(37.0));
  CHECK(mb->centroid_y - ma->centroid_y == doctest::Approx(28.0));
  for (int p = 2; p <= 4; ++p)
    for (int q = 0; q <= p; ++q) CHECK(mb->mu(p - q, q) == doctest::Approx(ma->mu(p - q, q)).epsilon(1e-10));
  const auto ia = ami_vector(*ma), ib = ami_vector(*mb);
  for (std::size_t i = 0; i < kAmiCount; ++i) CHECK(ib[i] == doctest::Approx(ia[i]).epsilon(1e-9));
}

TEST_CASE("shift_moments moves the reference point") {
  std::mt19937_64 rng(8);
  const auto m = *central_moments(random_image(rng, 30, 30));
  const auto back = shift_moments(shift_moments(m, 2.5, -1.25), -2.5, 1.25);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      CHECK(back.mu(a, b) == doctest::Approx(m.mu(a, b)).epsilon(1e-9).scale(m.mass * 100.0));
  // about a point dx to the right: mu10 = -dx * mass
  CHECK(shift_moments(m, 2.0, 0.0).mu(1, 0) == doctest::Approx(-2.0 * m.mass));
}

TEST_CASE("invariants match the generating graphs") {
  // Each closed form is the graph expansion divided by a fixed integer
  // (common content and orientation); the ratio must not depend on the image.
  const std::array<double, kAmiCount> factor = {2, -2, 2, -1, 2, 6, 1, 2, 1, 2};
  std::mt19937_64 rng(17);
  const auto& graphs = oracle::ami_graphs();
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = central_moments(random_image(rng, 12 + trial, 9 + 2 * trial));
    REQUIRE(m);
    const auto a = ami_vector(*m);
    for (std::size_t i = 0; i < kAmiCount; ++i) {
      CAPTURE(i);
      const double g = oracle::evaluate_graph(graphs[i], *m);
      CHECK(g == doctest::Approx(factor[i] * a[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("nine invariants are independent and the tenth is not") {
  // Jacobian of the invariants with respect to the twelve moments of orders
  // 2..4 at a generic point with unit mass.
  std::mt19937_64 rng(99);
  CentralMoments m;
  m.mass = 1.0;
  std::vector<std::pair<int, int>> vars;
  for (int p = 2; p <= 4; ++p)
    for (int q = 0; q <= p; ++q) {
      vars.push_back({p - q, q});
      m.mu(p - q, q) = oracle::uniform(rng, -1.0, 1.0) + (q == 0 || q == p ? 2.0 : 0.0);
    }
  Eigen::MatrixXd jac(kAmiCount, vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const double h = 1e-6;
    auto plus = m, minus = m;
    plus.mu(vars[j].first, vars[j].second) += h;
    minus.mu(vars[j].first, vars[j].second) -= h;
    const auto ap = ami_vector(plus), am = ami_vector(minus);
    for (std::size_t i = 0; i < kAmiCount; ++i) jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (ap[i] - am[i]) / (2 * h);
  }
  // row-normalise so invariants of very different size weigh equally
  for (Eigen::Index i = 0; i < jac.rows(); ++i) jac.row(i).normalize();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(jac).singularValues();
  CAPTURE(sv.transpose());
  CHECK(sv(8) > 1e-3);
  CHECK(sv(9) < 1e-6);

  const Eigen::VectorXd sv9 = Eigen::JacobiSVD<Eigen::MatrixXd>(jac.topRows(9)).singularValues();
  CHECK(sv9(8) > 1e-3);
}

TEST_CASE("invariants survive affine maps of a smooth blob") {
  std::mt19937_64 rng(2024);
  const auto blob = oracle::generic_random_blob(rng);
  const auto ref = ami_vector(*central_moments(blob));
  for (int t = 0; t < 5; ++t) {
    const auto moved = apply_affine(blob, oracle::random_affine(rng), 512, 512);
    const auto got = ami_vector(*central_moments(moved));
    for (std::size_t i = 0; i < kAmiCount; ++i) {
      CAPTURE(i);
      CHECK(rel(got[i], ref[i]) < 0.02);
    }
  }
}

TEST_CASE("invariants are unchanged by a mirror image") {
  std::mt19937_64 rng(6);
  const auto img = random_image(rng, 31, 17);
  RealImage mirror(31, 17);
  for (int y = 0; y < 17; ++y)
    for (int x = 0; x < 31; ++x) mirror(30 - x, y) = img(x, y);
  const auto a = ami_vector(*central_moments(img)), b = ami_vector(*central_moments(mirror));
  for (std::size_t i = 0; i < kAmiCount; ++i) CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-9));
}

TEST_CASE("quarter turn of an L-shape") {
  RealImage img(5, 5);
  img(1, 1) = img(1, 2) = img(2, 2) = 1.0;
  // counter-clockwise on screen about (2, 2): (x, y) -> (4 - y, x)
  const auto t = AffineTransform::about_point(0, -1, 1, 0, 2, 2);
  const auto out = apply_affine(img, t, 5, 5);
  RealImage expect(5, 5);
  expect(3, 1) = expect(2, 1) = expect(2, 2) = 1.0;
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) CHECK(out(x, y) == doctest::Approx(expect(x, y)).epsilon(1e-12));
}

TEST_CASE("integer translation shifts pixels and zero-fills") {
  std::mt19937_64 rng(1);
  const auto img = random_image(rng, 8, 6);
  const auto out = apply_affine(img, AffineTransform::translation(2, 1), 8, 6);
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 8; ++x) {
      const double expect = (x >= 2 && y >= 1) ? img(x - 2, y - 1) : 0.0;
      CHECK(out(x, y) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("identity transform copies the image") {
  std::mt19937_64 rng(2);
  const auto img = random_image(rng, 9, 4);
  CHECK(apply_affine(img, AffineTransform{}, 9, 4) == img);
}

TEST_CASE("affine inverse round-trips and rejects singular maps") {
  const auto t = AffineTransform::about_point(1.2, 0.3, -0.4, 0.9, 10, 20);
  const auto id = t.inverse();
  const auto p = t.apply(3.5, -7.0);
  const auto q = id.apply(p[0], p[1]);
  CHECK(q[0] == doctest::Approx(3.5));
  CHECK(q[1] == doctest::Approx(-7.0));
  const AffineTransform flat{0, 1, 2, 0, 2, 4};
  CHECK_THROWS_AS(flat.inverse(), UsageError);
  CHECK_THROWS_AS(apply_affine(RealImage(2, 2), flat, 2, 2), UsageError);
}

TEST_CASE("empty segments are degenerate") {
  RealImage zero(7, 3);
  CHECK_FALSE(central_moments(zero).has_value());
  const auto f = segment_feature(zero);
  CHECK(f.degenerate);
  CHECK(f.ami == AmiVector{});
  CHECK_THROWS_WITH_AS(ami_vector(CentralMoments{}), doctest::Contains("undefined invariants"), UsageError);

  CHECK_FALSE(segment_feature(rectangle(40, 10, 6)).degenerate);
  CHECK(segment_feature(rectangle(40, 10, 6)).ami[0] == doctest::Approx(ami_vector(*central_moments(rectangle(40, 10, 6)))[0]));
}

TEST_CASE("negative or non-finite pixels are rejected") {
  RealImage img(3, 3, 1.0);
  img(1, 1) = -0.5;
  CHECK_THROWS_AS(central_moments(img), UsageError);
  img(1, 1) = std::nan("");
  CHECK_THROWS_AS(central_moments(img), UsageError);
}
