#include <doctest.h>

#include <random>

#include "shiftvar/enumeration.hpp"
#include "shiftvar/shift_analysis.hpp"

using namespace shiftvar;

namespace {

VarietyInstance single_poly(const std::string& text, std::size_t n, u64 p,
                            VarietyMetadata md = {}) {
  const PrimeField field(p);
  return VarietyInstance{p, n, {parse_poly(text, n, field)}, md};
}

}  // namespace

TEST_CASE("rational points by exhaustive scan") {
  // two parallel lines in the plane: 2 * 7 points
  const auto v = single_poly("x1 * (x1 - 1)", 2, 7, {1, 2, 2, 2});
  CHECK(rational_points(v).size() == 14);

  const auto empty = single_poly("1", 2, 7, {1, 1, 0, 0});
  CHECK(rational_points(empty).size() == 0);

  const auto everything = single_poly("0", 1, 5, {1, 1, 0, 0});
  CHECK(rational_points(everything).size() == 5);
}

TEST_CASE("enumeration budget guard") {
  const auto v = single_poly("x1", 2, 101, {1, 1, 1, 1});
  CHECK_THROWS_WITH_AS(rational_points(v, 10000),
                       doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("balls") {
  const PrimeField f7(7);
  const PointSet u = ball(1, 2, f7);
  CHECK(u.size() == 9);
  // the balanced grid {-1,0,1}^2
  for (i64 a : {-1, 0, 1})
    for (i64 b : {-1, 0, 1})
      CHECK(u.contains(std::vector<u64>{canonical_mod(a, 7),
                                        canonical_mod(b, 7)}));

  const PrimeField f5(5);
  CHECK(ball(0, 3, f5).size() == 1);
  CHECK(ball(0, 3, f5).contains(std::vector<u64>{0, 0, 0}));
  CHECK_THROWS_WITH_AS(ball(3, 1, f5), doctest::Contains("RadiusTooLarge"),
                       Error);
}

TEST_CASE("difference sets of balls double the radius") {
  const PrimeField f7(7);
  const PointSet u1 = ball(1, 2, f7);
  CHECK(difference_set(u1) == ball(2, 2, f7));
  CHECK(difference_set(u1).size() == 25);

  PointSet zero(2, 7);
  zero.insert_coords(std::vector<u64>{0, 0});
  zero.finalize();
  CHECK(difference_set(zero) == zero);

  PointSet two(2, 7);
  two.insert_coords(std::vector<u64>{0, 0});
  two.insert_coords(std::vector<u64>{1, 0});
  two.finalize();
  const PointSet d = difference_set(two);
  CHECK(d.size() == 3);
  CHECK(d.contains(std::vector<u64>{0, 0}));
  CHECK(d.contains(std::vector<u64>{1, 0}));
  CHECK(d.contains(std::vector<u64>{6, 0}));
}

TEST_CASE("sumsets") {
  const PrimeField f7(7);
  const auto v = single_poly("x1 * (x1 - 1)", 2, 7, {1, 2, 2, 2});
  const PointSet x = rational_points(v);
  const PointSet u = ball(1, 2, f7);
  CHECK(sumset(x, u).size() == 28);  // (d + 2h) p = 4 * 7
  CHECK(sumset_size(x, u) == 28);

  PointSet zero(2, 7);
  zero.insert_coords(std::vector<u64>{0, 0});
  zero.finalize();
  CHECK(sumset(x, zero) == x);

  const PointSet empty(2, 7);
  CHECK(sumset(empty, u).size() == 0);
}

TEST_CASE("deficiency on the parallel-line example") {
  const PrimeField f7(7);
  const PointSet u = ball(1, 2, f7);

  const auto v2 = single_poly("x1 * (x1 - 1)", 2, 7, {1, 2, 2, 2});
  const auto rep2 = compute_delta(rational_points(v2), u);
  CHECK(rep2.count_x == 14);
  CHECK(rep2.count_u == 9);
  CHECK(rep2.count_sumset == 28);
  CHECK(rep2.delta == 98);  // p (d (2h+1)^2 - (d + 2h)) = 7 * 14

  const auto v1 = single_poly("x1", 2, 7, {1, 1, 1, 1});
  const auto rep1 = compute_delta(rational_points(v1), u);
  CHECK(rep1.delta == 42);  // ((2h+1)^2 - (2h+1)) p = 6 * 7

  const auto vempty = single_poly("1", 2, 7, {1, 1, 0, 0});
  CHECK(compute_delta(rational_points(vempty), u).delta == 0);
}

TEST_CASE("delta is translation invariant") {
  std::mt19937_64 rng(2024);
  const PrimeField f11(11);
  const PointSet u = ball(1, 2, f11);
  const auto v = single_poly("x2 - x1^2", 2, 11, {1, 2, 1, 2});
  const PointSet x = rational_points(v);
  const u64 base = compute_delta(x, u).delta;
  for (int trial = 0; trial < 5; ++trial) {
    const u64 c0 = rng() % 11, c1 = rng() % 11;
    PointSet xs(2, 11);
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto coords = x.point_at(i).coords;
      coords[0] = add_mod(coords[0], c0, 11);
      coords[1] = add_mod(coords[1], c1, 11);
      xs.insert_coords(coords);
    }
    xs.finalize();
    CHECK(compute_delta(xs, u).delta == base);
  }
}

TEST_CASE("shifting the system translates its rational points") {
  std::mt19937_64 rng(5);
  const u64 p = 7;
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = single_poly("x2 - x1^3", 2, p, {1, 3, 1, 3});
    Point u{{rng() % p, rng() % p}, p};
    VarietyInstance shifted = v;
    for (auto& f : shifted.polys) f = shift(f, u);
    const PointSet x = rational_points(v);
    const PointSet xs = rational_points(shifted);
    REQUIRE(x.size() == xs.size());
    for (std::size_t idx = 0; idx < x.size(); ++idx) {
      auto coords = x.point_at(idx).coords;
      for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] = add_mod(coords[i], u.coords[i], p);
      CHECK(xs.contains(coords));
    }
  }
}

TEST_CASE("closure under shifts to zero") {
  const PrimeField f5(5);
  CHECK(closed_under_shifts_to_zero(ball(1, 2, f5)));
  CHECK(closed_under_shifts_to_zero(ball(2, 2, f5)));

  PointSet bad(2, 5);
  bad.insert_coords(std::vector<u64>{1, 1});
  bad.finalize();
  CHECK_FALSE(closed_under_shifts_to_zero(bad));

  PointSet zero(2, 5);
  zero.insert_coords(std::vector<u64>{0, 0});
  zero.finalize();
  CHECK(closed_under_shifts_to_zero(zero));
}

TEST_CASE("pair overlaps") {
  const PrimeField f7(7);
  const PointSet u = ball(1, 2, f7);

  PointSet x(2, 7);
  x.insert_coords(std::vector<u64>{0, 0});
  x.insert_coords(std::vector<u64>{1, 0});
  x.finalize();
  // two unit grids offset by one overlap in 6 cells, both pair orders
  CHECK(pair_overlap_sum(x, u) == 12);

  PointSet singleton(2, 7);
  singleton.insert_coords(std::vector<u64>{3, 3});
  singleton.finalize();
  CHECK(pair_overlap_sum(singleton, u) == 0);

  const PointSet empty(2, 7);
  CHECK(pair_overlap_sum(empty, u) == 0);
}

TEST_CASE("overlap chain on small varieties") {
  const PrimeField f7(7);
  const PointSet u = ball(1, 2, f7);
  for (const char* text : {"x1 * (x1 - 1)", "x2 - x1^2", "x1", "x1 * x2"}) {
    const auto v = single_poly(text, 2, 7, {1, 2, 1, 2});
    const PointSet x = rational_points(v);
    const u64 mid = pair_overlap_sum(x, u);
    const u64 delta = compute_delta(x, u).delta;
    const u64 upper = shifted_overlap_bound(x, u);
    CHECK(delta <= mid);
    CHECK(mid <= upper);
  }
}

TEST_CASE("standard ball detection") {
  const PrimeField f7(7);
  CHECK(standard_ball_radius(ball(1, 2, f7)) == 1);
  CHECK(standard_ball_radius(ball(2, 2, f7)) == 2);
  CHECK(standard_ball_radius(ball(0, 2, f7)) == 0);

  PointSet not_ball(2, 7);
  not_ball.insert_coords(std::vector<u64>{0, 0});
  not_ball.insert_coords(std::vector<u64>{1, 0});
  not_ball.finalize();
  CHECK_FALSE(standard_ball_radius(not_ball).has_value());
}

TEST_CASE("bound report on the parallel-line cell") {
  const PrimeField f7(7);
  const auto v = single_poly("x1 * (x1 - 1)", 2, 7, {1, 2, 2, 2});
  const auto rep = bound_report(v, ball(1, 2, f7), /*shift_free=*/false);
  CHECK(rep.delta == 98);

  bool saw_product = false, saw_upper = false;
  for (const auto& b : rep.bounds) {
    if (b.name == "product_bound") {
      saw_product = true;
      CHECK(b.applicable);
      CHECK(b.holds);
    }
    if (b.name == "point_count_upper") {
      saw_upper = true;
      CHECK(b.applicable);
      CHECK(b.holds);
      CHECK(b.lhs == 14);  // equality: d p^r = 2 * 7
      CHECK(b.rhs == 14);
    }
    if (b.name == "delta_shiftfree") CHECK_FALSE(b.applicable);
  }
  CHECK(saw_product);
  CHECK(saw_upper);
}

TEST_CASE("bound report on a shift-free graph") {
  const PrimeField f7(7);
  const auto v = single_poly("x2 - x1^2", 2, 7, {1, 2, 1, 2});
  const auto rep = bound_report(v, ball(1, 2, f7), /*shift_free=*/true);
  bool saw = false;
  for (const auto& b : rep.bounds) {
    if (b.name == "delta_shiftfree") {
      saw = true;
      CHECK(b.applicable);
      CHECK(b.rhs == 864);  // 9 * 24 * 4 * 1
      CHECK(b.holds);
    }
  }
  CHECK(saw);
}

TEST_CASE("lower bound in the shifted regime at p = 1009") {
  const PrimeField f1009(1009);
  const auto v = single_poly("x1", 2, 1009, {1, 1, 1, 1});
  const auto rep = bound_report(v, ball(1, 2, f1009), /*shift_free=*/false);
  CHECK(rep.delta == 6054);
  bool saw = false;
  for (const auto& b : rep.bounds) {
    if (b.name == "delta_lower_shifted") {
      saw = true;
      CHECK(b.applicable);
      CHECK(b.holds);
      CHECK(b.rhs == doctest::Approx(504.5));
    }
  }
  CHECK(saw);
}

TEST_CASE("system-level invariance check") {
  const u64 p = 7;
  const auto v = single_poly("x1 * (x1 - 1)", 2, p, {1, 2, 2, 2});
  const auto res_inv = system_shift_invariant(v, Point{{0, 3}, p});
  CHECK(res_inv.point_sets_equal);
  CHECK(res_inv.per_generator);
  CHECK_FALSE(res_inv.heuristic);

  const auto res_not = system_shift_invariant(v, Point{{1, 0}, p});
  CHECK_FALSE(res_not.point_sets_equal);
  CHECK_FALSE(res_not.per_generator);
}

TEST_CASE("instance validation") {
  auto v = single_poly("x1", 2, 7, {1, 1, 1, 1});
  v.metadata.r = 5;
  CHECK_THROWS_WITH_AS(validate_instance(v),
                       doctest::Contains("MetadataMissing"), Error);
}
