#include "shiftvar/families.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

namespace shiftvar {

std::string family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::ParallelHyperplanes: return "parallel_hyperplanes";
    case FamilyKind::Graph: return "graph";
    case FamilyKind::Determinantal: return "determinantal";
    case FamilyKind::Discriminant: return "discriminant";
    case FamilyKind::Resultant: return "resultant";
    case FamilyKind::DecomposableSample: return "decomposable_sample";
    case FamilyKind::EssLinearForm: return "ess_linear_form";
  }
  return "unknown";
}

namespace {

std::optional<u128> checked_mul(u128 a, u128 b) {
  if (a == 0 || b == 0) return u128{0};
  const u128 r = a * b;
  if (r / a != b) return std::nullopt;
  return r;
}

u64 pow_u64_checked(u64 base, u64 e, const char* what) {
  u128 r = 1;
  for (u64 i = 0; i < e; ++i) {
    auto m = checked_mul(r, base);
    if (!m || *m > ~u64{0}) fail(ErrorCode::BudgetExceeded, what);
    r = *m;
  }
  return static_cast<u64>(r);
}

// exact binomial as an integer; desk-scale arguments only
u128 binomial_u128(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (u64 j = 1; j <= k; ++j) {
    r = r * (n - k + j);
    r /= j;  // exact at every step
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

FamilySpec parallel_hyperplanes(u64 d, std::size_t n, const PrimeField& field) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "need ambient dimension n >= 2");
  if (d < 1) fail(ErrorCode::InvalidArgument, "need d >= 1");
  if (field.p() <= d)
    fail(ErrorCode::DegreeNotBelowP, "need p > d for the hyperplane family");

  const u64 p = field.p();
  MPoly f = MPoly::constant(n, p, 1);
  const MPoly x1 = MPoly::variable(n, p, 1);
  for (u64 i = 0; i < d; ++i) {
    MPoly factor = x1;
    factor.add_term(Exponents(n, 0), canonical_mod(-static_cast<i64>(i), p));
    f = f * factor;
  }

  FamilySpec spec;
  spec.kind = FamilyKind::ParallelHyperplanes;
  spec.parameters = {{"d", d}, {"n", n}};
  spec.instance = VarietyInstance{
      p, n, {f}, VarietyMetadata{static_cast<u64>(n - 1), d, d, d}};
  spec.predictions["countX"] =
      d * pow_u64_checked(p, n - 1, "hyperplane count overflows");
  spec.shift_free = false;
  return spec;
}

HyperplanePrediction hyperplane_prediction(u64 d, std::size_t n, u64 p,
                                           u64 h) {
  HyperplanePrediction pred;
  pred.valid = p > d + 2 * h;
  if (!pred.valid) return pred;
  const u64 pnm1 = pow_u64_checked(p, n - 1, "prediction overflows");
  const u64 ball_n = pow_u64_checked(2 * h + 1, n, "prediction overflows");
  pred.count_x = d * pnm1;
  pred.count_sumset = (d + 2 * h) * pnm1;
  pred.delta = pnm1 * (d * ball_n - (d + 2 * h));
  return pred;
}

FamilySpec graph_variety(const MPoly& g) {
  const auto deg = g.degree();
  if (!deg || *deg < 2)
    fail(ErrorCode::DegreeTooSmall, "graph needs deg g >= 2");
  if (*deg >= g.p())
    fail(ErrorCode::DegreeNotBelowP, "graph needs p > deg g");

  const std::size_t n = g.nvars() + 1;
  const u64 p = g.p();
  MPoly f = MPoly::variable(n, p, n);
  for (const auto& [e, c] : g.terms()) {
    Exponents e2 = e;
    e2.push_back(0);
    f.add_term(e2, neg_mod(c, p));  // x_n - g
  }

  FamilySpec spec;
  spec.kind = FamilyKind::Graph;
  spec.parameters = {{"n", n}, {"d", *deg}};
  spec.instance = VarietyInstance{
      p, n, {f}, VarietyMetadata{static_cast<u64>(n - 1), *deg, 1, *deg}};
  spec.predictions["countX"] =
      pow_u64_checked(p, n - 1, "graph count overflows");
  spec.shift_free = true;
  return spec;
}

// ---------------------------------------------------------------------------

MPoly mpoly_exact_div(const MPoly& f, const MPoly& g) {
  if (g.is_zero()) throw std::logic_error("exact division by zero");
  const u64 p = f.p();
  MPoly rem = f;
  MPoly quot(f.nvars(), p);
  const auto& glead = *g.terms().begin();
  const u64 glead_inv = inv_mod(glead.second, p);
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().begin();
    Exponents qe(rlead.first.size());
    for (std::size_t i = 0; i < qe.size(); ++i) {
      if (rlead.first[i] < glead.first[i])
        throw std::logic_error("inexact polynomial division");
      qe[i] = rlead.first[i] - glead.first[i];
    }
    const u64 qc = mul_mod(rlead.second, glead_inv, p);
    MPoly qterm(f.nvars(), p);
    qterm.add_term(qe, qc);
    quot = quot + qterm;
    rem = rem - qterm * g;
  }
  return quot;
}

MPoly poly_determinant(std::vector<std::vector<MPoly>> m) {
  const std::size_t k = m.size();
  if (k == 0) throw std::logic_error("determinant of an empty matrix");
  for (const auto& row : m)
    if (row.size() != k) throw std::logic_error("matrix is not square");
  const std::size_t nv = m[0][0].nvars();
  const u64 p = m[0][0].p();

  bool negate = false;
  MPoly prev = MPoly::constant(nv, p, 1);
  for (std::size_t step = 0; step + 1 < k; ++step) {
    if (m[step][step].is_zero()) {
      std::size_t r = step + 1;
      while (r < k && m[r][step].is_zero()) ++r;
      if (r == k) return MPoly::zero(nv, p);
      std::swap(m[step], m[r]);
      negate = !negate;
    }
    for (std::size_t i = step + 1; i < k; ++i) {
      for (std::size_t j = step + 1; j < k; ++j) {
        const MPoly num =
            m[step][step] * m[i][j] - m[i][step] * m[step][j];
        m[i][j] = mpoly_exact_div(num, prev);
      }
      m[i][step] = MPoly::zero(nv, p);
    }
    prev = m[step][step];
    if (prev.is_zero()) return MPoly::zero(nv, p);
  }
  return negate ? -m[k - 1][k - 1] : m[k - 1][k - 1];
}

std::vector<std::vector<MPoly>> sylvester_matrix(
    const std::vector<MPoly>& f_coeffs, const std::vector<MPoly>& g_coeffs) {
  // coefficients highest degree first: f has degree n, g degree m
  const std::size_t n = f_coeffs.size() - 1;
  const std::size_t m = g_coeffs.size() - 1;
  const std::size_t k = n + m;
  const std::size_t nv = f_coeffs[0].nvars();
  const u64 p = f_coeffs[0].p();
  std::vector<std::vector<MPoly>> mat(
      k, std::vector<MPoly>(k, MPoly::zero(nv, p)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) mat[i][i + j] = f_coeffs[j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) mat[m + i][i + j] = g_coeffs[j];
  return mat;
}

FamilySpec determinantal_minors(std::size_t rows, std::size_t cols,
                                std::size_t s, const PrimeField& field) {
  if (rows < 1 || cols < 1)
    fail(ErrorCode::InvalidArgument, "matrix shape must be positive");
  if (s >= std::min(rows, cols))
    fail(ErrorCode::RankBoundInvalid, "need s < min(rows, cols)");

  const u64 p = field.p();
  const std::size_t n = rows * cols;
  const auto var = [&](std::size_t i, std::size_t j) {
    return MPoly::variable(n, p, i * cols + j + 1);  // row-major x_ij
  };

  // degree from the product formula, kept exact and checked for integrality
  u128 num = 1, den = 1;
  for (std::size_t i = 0; i + s < cols; ++i) {
    num *= binomial_u128(rows + i, s);
    den *= binomial_u128(s + i, s);
    // reduce eagerly to keep the numbers small
    u128 a = num, b = den;
    while (b) {
      const u128 t = a % b;
      a = b;
      b = t;
    }
    num /= a;
    den /= a;
  }
  if (den != 1)
    throw std::logic_error("determinantal degree formula is not integral");
  const u64 degree = static_cast<u64>(num);
  if (field.p() <= degree)
    fail(ErrorCode::DegreeNotBelowP, "need p above the variety degree");

  // all (s+1) x (s+1) minors, row and column subsets in lexicographic order
  std::vector<MPoly> minors;
  std::vector<std::size_t> rsel(s + 1), csel(s + 1);
  const auto next_subset = [](std::vector<std::size_t>& sel, std::size_t m) {
    const std::size_t k = sel.size();
    std::size_t i = k;
    while (i-- > 0) {
      if (sel[i] + (k - i) < m) {
        ++sel[i];
        for (std::size_t j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i <= s; ++i) rsel[i] = i;
  do {
    for (std::size_t i = 0; i <= s; ++i) csel[i] = i;
    do {
      std::vector<std::vector<MPoly>> sub(
          s + 1, std::vector<MPoly>(s + 1, MPoly::zero(n, p)));
      for (std::size_t i = 0; i <= s; ++i)
        for (std::size_t j = 0; j <= s; ++j) sub[i][j] = var(rsel[i], csel[j]);
      minors.push_back(poly_determinant(std::move(sub)));
    } while (next_subset(csel, cols));
  } while (next_subset(rsel, rows));

  FamilySpec spec;
  spec.kind = FamilyKind::Determinantal;
  spec.parameters = {{"rows", rows}, {"cols", cols}, {"s", s}};
  const u64 dim = static_cast<u64>(s) * (rows + cols - s);
  spec.instance = VarietyInstance{p, n, std::move(minors),
                                  VarietyMetadata{dim, degree, 1, degree}};
  spec.shift_free = true;
  return spec;
}

namespace {

constexpr u64 kMaxSylvesterSize = 8;

// generic coefficient polynomials a_hi, ..., a_lo as variables var_lo+deg..var_lo
std::vector<MPoly> generic_coeffs(std::size_t nvars, u64 p, std::size_t var_lo,
                                  u64 deg) {
  std::vector<MPoly> coeffs;
  for (u64 k = 0; k <= deg; ++k)
    coeffs.push_back(MPoly::variable(nvars, p, var_lo + (deg - k)));
  return coeffs;
}

}  // namespace

FamilySpec generic_discriminant(u64 n, const PrimeField& field) {
  if (n < 2) fail(ErrorCode::DegreeTooSmall, "need n >= 2");
  if (field.p() <= n) fail(ErrorCode::PrimeTooSmall, "need p > n");
  if (2 * n - 1 > kMaxSylvesterSize)
    fail(ErrorCode::BudgetExceeded, "symbolic expansion supported for 2n-1 <= 8");

  const u64 p = field.p();
  const std::size_t nvars = n + 1;  // a_0 .. a_n
  const std::vector<MPoly> f = generic_coeffs(nvars, p, 1, n);
  // derivative coefficients, highest first: k a_k for k = n .. 1
  std::vector<MPoly> df;
  for (u64 k = n; k >= 1; --k)
    df.push_back(scale(MPoly::variable(nvars, p, k + 1), k % p));

  MPoly disc = poly_determinant(sylvester_matrix(f, df));
  if (!disc.degree() || *disc.degree() != 2 * n - 1)
    throw std::logic_error("discriminant degree disagrees with 2n-1");

  FamilySpec spec;
  spec.kind = FamilyKind::Discriminant;
  spec.parameters = {{"n", n}};
  spec.instance = VarietyInstance{
      p, nvars, {disc}, VarietyMetadata{n, 2 * n - 1, 1, 2 * n - 1}};
  spec.shift_free = true;
  return spec;
}

FamilySpec generic_resultant(u64 n, u64 m, const PrimeField& field) {
  if (n < 1 || m < 1) fail(ErrorCode::DegreeTooSmall, "need n, m >= 1");
  if (field.p() <= n + m + 2) fail(ErrorCode::PrimeTooSmall, "need p > n+m+2");
  if (n + m > kMaxSylvesterSize)
    fail(ErrorCode::BudgetExceeded, "symbolic expansion supported for n+m <= 8");

  const u64 p = field.p();
  const std::size_t nvars = n + m + 2;  // a_0..a_n, b_0..b_m
  const std::vector<MPoly> f = generic_coeffs(nvars, p, 1, n);
  const std::vector<MPoly> g = generic_coeffs(nvars, p, n + 2, m);

  MPoly res = poly_determinant(sylvester_matrix(f, g));
  if (!res.degree() || *res.degree() != n + m)
    throw std::logic_error("resultant degree disagrees with n+m");

  FamilySpec spec;
  spec.kind = FamilyKind::Resultant;
  spec.parameters = {{"n", n}, {"m", m}};
  spec.instance = VarietyInstance{
      p, nvars, {res}, VarietyMetadata{n + m + 1, n + m, 1, n + m}};
  spec.shift_free = true;
  return spec;
}

PointSet decomposable_sample(u64 ell, u64 m, const PrimeField& field,
                             u64 count, u64 seed) {
  if (ell < 2 || m < 2) fail(ErrorCode::DegreeTooSmall, "need ell, m >= 2");
  const u64 n = ell * m;
  const u64 p = field.p();
  if (p <= n) fail(ErrorCode::PrimeTooSmall, "need p > ell*m");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> dist(0, p - 1);
  std::uniform_int_distribution<u64> dist_nonzero(1, p - 1);

  PointSet out(n + 1, p);
  for (u64 sample = 0; sample < count; ++sample) {
    // g of degree exactly ell; h monic original of degree m
    std::vector<u64> g(ell + 1);  // g[k] multiplies x^k
    for (u64 k = 0; k < ell; ++k) g[k] = dist(rng);
    g[ell] = dist_nonzero(rng);
    std::vector<u64> h(m + 1, 0);
    h[m] = 1;
    for (u64 k = 1; k < m; ++k) h[k] = dist(rng);

    // g(h) by Horner over dense univariate vectors
    std::vector<u64> acc{g[ell]};
    for (u64 k = ell; k-- > 0;) {
      std::vector<u64> next(acc.size() + m, 0);
      for (std::size_t i = 0; i < acc.size(); ++i) {
        if (acc[i] == 0) continue;
        for (std::size_t j = 0; j < h.size(); ++j)
          next[i + j] = add_mod(next[i + j], mul_mod(acc[i], h[j], p), p);
      }
      next[0] = add_mod(next[0], g[k], p);
      acc = std::move(next);
    }
    acc.resize(n + 1, 0);
    out.insert_coords(acc);  // coordinates a_0 .. a_n
  }
  out.finalize();
  return out;
}

FamilySpec ess_linear_form(const std::vector<u64>& a, const PrimeField& field) {
  if (a.empty()) fail(ErrorCode::InvalidArgument, "empty coefficient list");
  const u64 p = field.p();
  const std::size_t n = a.size();
  MPoly f(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 1;
    f.add_term(e, a[i] % p);
  }
  if (f.is_zero())
    fail(ErrorCode::ZeroPolynomial, "all coefficients vanish mod p");

  FamilySpec spec;
  spec.kind = FamilyKind::EssLinearForm;
  spec.parameters = {{"n", n}};
  spec.instance = VarietyInstance{
      p, n, {f}, VarietyMetadata{static_cast<u64>(n - 1), 1, 1, 1}};
  spec.predictions["countX"] =
      pow_u64_checked(p, n - 1, "hyperplane count overflows");
  spec.shift_free = false;
  return spec;
}

}  // namespace shiftvar
