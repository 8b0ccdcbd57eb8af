#include "shiftvar/prime_field.hpp"

#include <array>

namespace shiftvar {

u64 inv_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
  // Fermat: a^(p-2).  p is prime by construction everywhere this is used.
  return pow_mod(a, p - 2, p);
}

namespace {

bool miller_rabin_witness(u64 a, u64 d, unsigned s, u64 n) {
  u64 x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Sorenson-Webster witness set: no strong pseudoprime below 3.3 * 10^24
  // passes all twelve bases, so the test is exact for every 64-bit n.
  static constexpr std::array<u64, 12> witnesses = {2,  3,  5,  7,  11, 13,
                                                    17, 19, 23, 29, 31, 37};
  for (u64 a : witnesses) {
    if (!miller_rabin_witness(a, d, s, n)) return false;
  }
  return true;
}

u64 next_prime_above(u64 n) {
  u64 c = n < 2 ? 3 : n + 1;
  if (c <= 3) return 3;
  if ((c & 1) == 0) {
    if (is_prime_u64(c)) return c;  // only c == 2, excluded above
    ++c;
  }
  while (!is_prime_u64(c)) c += 2;
  return c;
}

// ---------------------------------------------------------------------------

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.p != b.p)
    fail(ErrorCode::FieldMismatch, "operands live in different fields");
}

}  // namespace

FieldElement operator+(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return {add_mod(a.v, b.v, a.p), a.p};
}

FieldElement operator-(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return {sub_mod(a.v, b.v, a.p), a.p};
}

FieldElement operator*(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return {mul_mod(a.v, b.v, a.p), a.p};
}

FieldElement operator/(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return {mul_mod(a.v, inv_mod(b.v, b.p), a.p), a.p};
}

FieldElement operator-(FieldElement a) { return {neg_mod(a.v, a.p), a.p}; }

FieldElement inv(FieldElement a) { return {inv_mod(a.v, a.p), a.p}; }

FieldElement pow(FieldElement a, u64 e) { return {pow_mod(a.v, e, a.p), a.p}; }

i64 balanced(FieldElement a) { return balanced_mod(a.v, a.p); }

PrimeField::PrimeField(u64 p) : p_(p), half_((p - 1) / 2) {
  if (p < 3 || (p & 1) == 0)
    fail(ErrorCode::EvenOrTooSmall, "modulus must be an odd prime >= 3");
  if (p > kMaxModulus)
    fail(ErrorCode::ModulusTooLarge, "modulus exceeds the supported range");
  if (!is_prime_u64(p)) fail(ErrorCode::NotPrime, "modulus is composite");
}

// ---------------------------------------------------------------------------

namespace {

// Gauss-Jordan to reduced row echelon form.  Returns pivot column per pivot
// row; `m` is modified in place.
std::vector<std::size_t> rref(MatrixFp& m) {
  const u64 p = m.p();
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pr = row;
    while (pr < m.rows() && m.at(pr, col) == 0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != row) {
      for (std::size_t c = 0; c < m.cols(); ++c)
        std::swap(m.at(pr, c), m.at(row, c));
    }
    const u64 piv_inv = inv_mod(m.at(row, col), p);
    for (std::size_t c = col; c < m.cols(); ++c)
      m.at(row, c) = mul_mod(m.at(row, c), piv_inv, p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      const u64 factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m.at(r, c) = sub_mod(m.at(r, c), mul_mod(factor, m.at(row, c), p), p);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  return pivot_cols;
}

}  // namespace

std::vector<std::vector<u64>> kernel_basis(const MatrixFp& matrix) {
  MatrixFp m = matrix;
  const u64 p = m.p();
  const std::size_t n = m.cols();
  const auto pivot_cols = rref(m);

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<u64>> basis;
  for (std::size_t fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<u64> v(n, 0);
    v[fc] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
      v[pivot_cols[i]] = neg_mod(m.at(i, fc), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const MatrixFp& matrix) {
  MatrixFp m = matrix;
  return rref(m).size();
}

std::vector<u64> mat_vec(const MatrixFp& m, const std::vector<u64>& v) {
  if (v.size() != m.cols())
    fail(ErrorCode::DimensionMismatch, "mat_vec size mismatch");
  std::vector<u64> out(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    u64 acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c)
      acc = add_mod(acc, mul_mod(m.at(r, c), v[c], m.p()), m.p());
    out[r] = acc;
  }
  return out;
}

MatrixFp mat_mul(const MatrixFp& a, const MatrixFp& b) {
  if (a.cols() != b.rows() || a.p() != b.p())
    fail(ErrorCode::DimensionMismatch, "mat_mul shape mismatch");
  MatrixFp out(a.rows(), b.cols(), a.p());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const u64 ark = a.at(r, k);
      if (ark == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c)
        out.at(r, c) =
            add_mod(out.at(r, c), mul_mod(ark, b.at(k, c), a.p()), a.p());
    }
  return out;
}

MatrixFp identity_matrix(std::size_t n, u64 p) {
  MatrixFp m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

}  // namespace shiftvar
