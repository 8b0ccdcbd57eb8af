#ifndef SHIFTVAR_PRIME_FIELD_HPP
#define SHIFTVAR_PRIME_FIELD_HPP

#include <cstdint>
#include <vector>

#include "shiftvar/errors.hpp"

namespace shiftvar {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128_t;

// Largest supported modulus; keeps a*b and p^2 inside u128 with headroom
// and balanced representatives inside i64.
inline constexpr u64 kMaxModulus = (u64{1} << 62);

// ---------------------------------------------------------------------------
// Raw modular arithmetic on canonical residues (0 <= a,b < p).

inline u64 add_mod(u64 a, u64 b, u64 p) {
  u64 s = a + b;  // p < 2^63, no overflow
  return s >= p ? s - p : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

inline u64 neg_mod(u64 a, u64 p) { return a == 0 ? 0 : p - a; }

inline u64 mul_mod(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<u128>(a) * b) % p);
}

inline u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 base = a % p, r = 1 % p;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, base, p);
    e >>= 1;
    if (e) base = mul_mod(base, base, p);
  }
  return r;
}

u64 inv_mod(u64 a, u64 p);  // throws DivisionByZero on a == 0

// Reduce an arbitrary signed integer to its canonical residue.
inline u64 canonical_mod(i64 x, u64 p) {
  i64 r = x % static_cast<i64>(p);
  if (r < 0) r += static_cast<i64>(p);
  return static_cast<u64>(r);
}

// Deterministic Miller-Rabin; the witness set certifies correctness for all
// 64-bit inputs, which covers the supported modulus range.
bool is_prime_u64(u64 n);

// First prime strictly greater than `n` (and >= 3).
u64 next_prime_above(u64 n);

// ---------------------------------------------------------------------------

class PrimeField;

// An element of F_p.  Carries its modulus, which identifies the field;
// mixing moduli in a binary operation throws FieldMismatch.
struct FieldElement {
  u64 v = 0;
  u64 p = 0;

  bool is_zero() const { return v == 0; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.p == b.p && a.v == b.v;
  }
};

FieldElement operator+(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a, FieldElement b);
FieldElement operator*(FieldElement a, FieldElement b);
FieldElement operator/(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a);
FieldElement inv(FieldElement a);
FieldElement pow(FieldElement a, u64 e);

// The unique representative of `a` in [-(p-1)/2, (p-1)/2].
i64 balanced(FieldElement a);
inline i64 balanced_mod(u64 v, u64 p) {
  return v <= (p - 1) / 2 ? static_cast<i64>(v)
                          : static_cast<i64>(v) - static_cast<i64>(p);
}

// F_p for an odd prime p.  Construction proves primality deterministically.
class PrimeField {
 public:
  // Throws EvenOrTooSmall (p < 3 or even), NotPrime, ModulusTooLarge.
  explicit PrimeField(u64 p);

  u64 p() const { return p_; }
  u64 half() const { return half_; }  // (p-1)/2

  FieldElement element(i64 x) const { return {canonical_mod(x, p_), p_}; }
  FieldElement from_canonical(u64 v) const { return {v % p_, p_}; }
  FieldElement zero() const { return {0, p_}; }
  FieldElement one() const { return {1, p_}; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p_ == b.p_;
  }

 private:
  u64 p_;
  u64 half_;
};

// ---------------------------------------------------------------------------
// Dense matrix over F_p, row-major.  Carrier for the shift-direction linear
// systems; no attempt at sub-quadratic algorithms.

class MatrixFp {
 public:
  MatrixFp(std::size_t rows, std::size_t cols, u64 p)
      : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  u64 p() const { return p_; }

  u64& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  u64 at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

 private:
  std::size_t rows_, cols_;
  u64 p_;
  std::vector<u64> a_;
};

// Basis of the right null space {v : M v = 0}, computed by Gauss-Jordan
// elimination to reduced echelon form.  Pivots are chosen lowest column
// index first and normalized to 1; one basis vector per free column, in
// increasing column order, with a 1 in that column.  Deterministic:
// identical input gives bit-identical output.
std::vector<std::vector<u64>> kernel_basis(const MatrixFp& m);

// Rank via the same elimination (used for invertibility checks).
std::size_t rank(const MatrixFp& m);

// Matrix-vector product over F_p.
std::vector<u64> mat_vec(const MatrixFp& m, const std::vector<u64>& v);

// Matrix product a*b over F_p.
MatrixFp mat_mul(const MatrixFp& a, const MatrixFp& b);

MatrixFp identity_matrix(std::size_t n, u64 p);

}  // namespace shiftvar

#endif  // SHIFTVAR_PRIME_FIELD_HPP
