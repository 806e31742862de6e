#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gait/error.h"
#include "gait/image.h"

using gait::Grid;

TEST_CASE("grid stores row-major with x as column") {
  Grid<int> g(3, 2, std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(g.width() == 3);
  CHECK(g.height() == 2);
  CHECK(g(2, 0) == 2);
  CHECK(g(0, 1) == 3);
  CHECK(g.row(1)[2] == 5);
  g(1, 1) = 40;
  CHECK(g.values()[4] == 40);
}

TEST_CASE("grid rejects bad shapes") {
  CHECK_THROWS_AS(Grid<int>(0, 3), gait::UsageError);
  CHECK_THROWS_AS(Grid<int>(2, -1), gait::UsageError);
  CHECK_THROWS_AS(Grid<int>(2, 2, std::vector<int>{1, 2, 3}), gait::UsageError);
}

TEST_CASE("grid equality and shape") {
  Grid<double> a(2, 2, 1.5);
  Grid<double> b(2, 2, 1.5);
  CHECK(a == b);
  b(1, 1) = 0.0;
  CHECK_FALSE(a == b);
  CHECK(a.same_shape(b));
  CHECK_FALSE(a.same_shape(Grid<double>(4, 1)));
}
