#include <doctest.h>

#include <random>
#include <set>

#include "shiftvar/shift_analysis.hpp"

using namespace shiftvar;

namespace {

MPoly random_poly(std::mt19937_64& rng, std::size_t n, u64 p, u64 dmax) {
  MPoly f(n, p);
  const std::size_t terms = 1 + rng() % 6;
  for (std::size_t t = 0; t < terms; ++t) {
    Exponents e(n, 0);
    u64 left = dmax;
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = static_cast<std::uint32_t>(rng() % (left + 1));
      left -= e[i];
    }
    f.add_term(e, rng() % p);
  }
  if (f.is_zero()) f.add_term(Exponents(n, 0), 1);
  return f;
}

// all u with f(x-u) = f(x), by scanning F_p^n with the direct test
std::set<std::vector<u64>> invariant_directions_by_scan(const MPoly& f) {
  std::set<std::vector<u64>> out;
  const u64 p = f.p();
  const std::size_t n = f.nvars();
  u64 total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  std::vector<u64> u(n);
  for (u64 code = 0; code < total; ++code) {
    u64 rem = code;
    for (std::size_t i = n; i-- > 0;) {
      u[i] = rem % p;
      rem /= p;
    }
    if (is_shift_invariant(f, Point{u, p})) out.insert(u);
  }
  return out;
}

std::set<std::vector<u64>> span_by_enumeration(const ShiftKernel& k) {
  std::set<std::vector<u64>> out;
  const std::size_t dim = k.dim();
  u64 total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= k.p;
  std::vector<u64> coeff(dim);
  for (u64 code = 0; code < total; ++code) {
    u64 rem = code;
    for (std::size_t i = dim; i-- > 0;) {
      coeff[i] = rem % k.p;
      rem /= k.p;
    }
    std::vector<u64> v(k.n, 0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < k.n; ++j)
        v[j] = add_mod(v[j], mul_mod(coeff[i], k.basis[i][j], k.p), k.p);
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST_CASE("kernel of a linear form") {
  const PrimeField f7(7);
  const MPoly f = parse_poly("x1 + 2*x2 + 3*x3", 3, f7);
  const ShiftKernel k = shift_kernel(f);
  REQUIRE(k.dim() == 2);
  CHECK(k.basis[0] == std::vector<u64>{5, 1, 0});
  CHECK(k.basis[1] == std::vector<u64>{4, 0, 1});
  // cross-check against the direct scan over all 343 candidates
  CHECK(invariant_directions_by_scan(f) == span_by_enumeration(k));
}

TEST_CASE("graphs of nonlinear functions admit no invariant direction") {
  const PrimeField f7(7);
  CHECK(shift_kernel(parse_poly("x2 - x1^2", 2, f7)).dim() == 0);
  CHECK(shift_kernel(parse_poly("x1*x4 - x2*x3", 4, f7)).dim() == 0);
}

TEST_CASE("kernel preconditions") {
  const PrimeField f5(5);
  CHECK_THROWS_WITH_AS(shift_kernel(MPoly::zero(2, 5)),
                       doctest::Contains("ZeroPolynomial"), Error);
  CHECK_THROWS_WITH_AS(shift_kernel(parse_poly("x1^5", 1, f5)),
                       doctest::Contains("DegreeNotBelowP"), Error);
  CHECK_THROWS_AS(shift_kernel(parse_poly("x1^6", 1, f5)), Error);
  // constants are fixed by every direction
  CHECK(shift_kernel(MPoly::constant(3, 5, 2)).dim() == 3);
}

TEST_CASE("direct invariance test") {
  const PrimeField f5(5);
  CHECK(is_shift_invariant(parse_poly("x1 - x2", 2, f5), Point{{1, 1}, 5}));
  CHECK_FALSE(is_shift_invariant(parse_poly("x1^2", 1, f5), Point{{1}, 5}));
  CHECK(is_shift_invariant(parse_poly("x1^2", 1, f5), Point{{0}, 5}));
}

TEST_CASE("kernel equals the exhaustive invariance scan on random inputs") {
  std::mt19937_64 rng(123);
  const u64 primes[] = {5, 7, 11};
  for (int trial = 0; trial < 60; ++trial) {
    const u64 p = primes[trial % 3];
    const std::size_t n = 1 + rng() % 3;
    const MPoly f = random_poly(rng, n, p, 4);
    CHECK(invariant_directions_by_scan(f) ==
          span_by_enumeration(shift_kernel(f)));
  }
}

TEST_CASE("invariance is closed under scalar multiples of the direction") {
  std::mt19937_64 rng(321);
  const u64 p = 7;
  const PrimeField f7(p);
  const MPoly f = parse_poly("x1 - x2 + 3*x3", 3, f7);
  const ShiftKernel k = shift_kernel(f);
  REQUIRE(k.dim() >= 1);
  for (const auto& b : k.basis) {
    for (u64 c = 0; c < p; ++c) {
      std::vector<u64> cu(b.size());
      for (std::size_t i = 0; i < b.size(); ++i) cu[i] = mul_mod(c, b[i], p);
      CHECK(is_shift_invariant(f, Point{cu, p}));
    }
  }
  (void)rng;
}

TEST_CASE("operator identity for weighted derivative sums") {
  // (sum_i u_i D_i) after (sum_{|t|=j-1} u^t D^t) = j sum_{|s|=j} u^s D^s
  std::mt19937_64 rng(55);
  const u64 p = 11;

  const auto multi_indices = [](std::size_t n, u64 weight) {
    std::vector<std::vector<i64>> out;
    std::vector<i64> cur(n, 0);
    const auto rec = [&](auto&& self, std::size_t pos, u64 left) -> void {
      if (pos + 1 == n) {
        cur[pos] = static_cast<i64>(left);
        out.push_back(cur);
        return;
      }
      for (u64 k = 0; k <= left; ++k) {
        cur[pos] = static_cast<i64>(k);
        self(self, pos + 1, left - k);
      }
    };
    rec(rec, 0, weight);
    return out;
  };

  const auto u_power = [&](const std::vector<u64>& u,
                           const std::vector<i64>& s) {
    u64 r = 1;
    for (std::size_t i = 0; i < u.size(); ++i)
      r = mul_mod(r, pow_mod(u[i], static_cast<u64>(s[i]), p), p);
    return r;
  };

  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    const MPoly f = random_poly(rng, n, p, 5);
    std::vector<u64> u(n);
    for (auto& c : u) c = rng() % p;
    for (u64 j = 1; j <= 4; ++j) {
      MPoly inner(n, p);
      for (const auto& t : multi_indices(n, j - 1))
        inner = inner + scale(hasse_multi(f, t), u_power(u, t));
      MPoly lhs(n, p);
      for (std::size_t i = 0; i < n; ++i)
        lhs = lhs + scale(hasse_derivative(inner, i + 1, 1), u[i]);

      MPoly rhs(n, p);
      for (const auto& s : multi_indices(n, j))
        rhs = rhs + scale(hasse_multi(f, s), u_power(u, s));
      rhs = scale(rhs, j % p);

      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("single cylinder step") {
  const PrimeField f5(5);
  const MPoly f = parse_poly("x1 - x2", 2, f5);
  const CylinderForm form = cylinder_normalize(f, Point{{1, 1}, 5});
  CHECK(form.m == 1);
  CHECK(form.reduced == parse_poly("x1", 1, f5));
  // first row of the map is the linear form x1 - x2
  CHECK(form.linear_map.at(0, 0) == 1);
  CHECK(form.linear_map.at(0, 1) == 4);
  CHECK(cylinder_reconstruct(form) == f);

  const PrimeField f7(7);
  const MPoly g = parse_poly("x1", 2, f7);
  const CylinderForm gform = cylinder_normalize(g, Point{{0, 1}, 7});
  CHECK(gform.m == 1);
  CHECK(gform.reduced == parse_poly("x1", 1, f7));

  CHECK_THROWS_WITH_AS(cylinder_normalize(parse_poly("x1^2", 2, f7),
                                          Point{{1, 0}, 7}),
                       doctest::Contains("NotInvariantUnderU"), Error);
  CHECK_THROWS_WITH_AS(cylinder_normalize(g, Point{{0, 0}, 7}),
                       doctest::Contains("ZeroShift"), Error);
}

TEST_CASE("full reduction peels every invariant direction") {
  const PrimeField f7(7);
  const MPoly f = parse_poly("x1 + 2*x2 + 3*x3", 3, f7);
  const CylinderForm form = full_cylinder_reduction(f);
  CHECK(form.m == 2);
  CHECK(form.reduced.nvars() == 1);
  CHECK(*form.reduced.degree() == 1);
  CHECK(cylinder_reconstruct(form) == f);

  const MPoly g = parse_poly("x2 - x1^2", 2, f7);
  const CylinderForm gform = full_cylinder_reduction(g);
  CHECK(gform.m == 0);
  CHECK(gform.reduced == g);

  const MPoly c = MPoly::constant(3, 7, 4);
  const CylinderForm cform = full_cylinder_reduction(c);
  CHECK(cform.m == 3);
  CHECK(cform.reduced.nvars() == 0);
  CHECK(cform.reduced.constant_term() == 4);
  CHECK(cylinder_reconstruct(cform) == c);
}

TEST_CASE("reduction of composed linear forms recovers a trivial kernel") {
  std::mt19937_64 rng(77);
  const u64 p = 11;
  const PrimeField field(p);
  for (int trial = 0; trial < 30; ++trial) {
    // f = g(l1, ..., lk) for random g and random independent linear forms
    const std::size_t n = 3 + rng() % 2;
    const std::size_t k = 1 + rng() % (n - 1);
    std::vector<MPoly> forms;
    for (std::size_t i = 0; i < k; ++i) {
      MPoly lin(n, p);
      for (std::size_t j = 0; j < n; ++j) {
        Exponents e(n, 0);
        e[j] = 1;
        lin.add_term(e, rng() % p);
      }
      if (lin.is_zero()) lin = MPoly::variable(n, p, 1);
      forms.push_back(lin);
    }
    const MPoly g = random_poly(rng, k, p, 3);
    const MPoly f = compose(g, forms);
    if (f.is_zero()) continue;

    const CylinderForm form = full_cylinder_reduction(f);
    CHECK(cylinder_reconstruct(form) == f);
    if (!form.reduced.is_constant())
      CHECK(shift_kernel(form.reduced).dim() == 0);
    CHECK(form.m == shift_kernel(f).dim());
  }
}

TEST_CASE("gradient orthogonality at rational points") {
  const PrimeField f5(5);
  const MPoly f = parse_poly("x1 - x2", 2, f5);
  std::vector<Point> pts;
  for (u64 c = 0; c < 5; ++c) pts.push_back(Point{{c, c}, 5});
  CHECK(gradient_orthogonality_check(f, Point{{1, 1}, 5}, pts));
  CHECK(gradient_orthogonality_check(f, Point{{0, 0}, 5}, pts));

  const PrimeField f5b(5);
  const MPoly g = parse_poly("x1", 2, f5b);
  std::vector<Point> gpts;
  for (u64 c = 0; c < 5; ++c) gpts.push_back(Point{{0, c}, 5});
  CHECK(gradient_orthogonality_check(g, Point{{0, 1}, 5}, gpts));

  CHECK_THROWS_WITH_AS(
      gradient_orthogonality_check(g, Point{{1, 0}, 5}, gpts),
      doctest::Contains("PreconditionViolated"), Error);
  CHECK_THROWS_WITH_AS(
      gradient_orthogonality_check(g, Point{{0, 1}, 5}, {Point{{1, 1}, 5}}),
      doctest::Contains("PreconditionViolated"), Error);
}
