#ifndef SHIFTVAR_MULTIPOLY_HPP
#define SHIFTVAR_MULTIPOLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shiftvar/prime_field.hpp"

namespace shiftvar {

// Exponent vector (s_1, ..., s_n); |s| is the total degree of the monomial.
using Exponents = std::vector<std::uint32_t>;

inline u64 exponent_sum(const Exponents& e) {
  u64 s = 0;
  for (auto x : e) s += x;
  return s;
}

// Graded-lexicographic term order, leading term first.
struct TermOrder {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const u64 da = exponent_sum(a), db = exponent_sum(b);
    if (da != db) return da > db;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return a.size() > b.size();
  }
};

// A point of F_p^n, coordinates stored canonically.
struct Point {
  std::vector<u64> coords;
  u64 p = 0;

  std::size_t dim() const { return coords.size(); }

  // max_i |balanced(coord_i)|, always <= (p-1)/2
  u64 inf_norm() const {
    u64 m = 0;
    for (u64 c : coords) {
      const i64 b = balanced_mod(c, p);
      const u64 a = static_cast<u64>(b < 0 ? -b : b);
      if (a > m) m = a;
    }
    return m;
  }

  bool is_zero() const {
    for (u64 c : coords)
      if (c != 0) return false;
    return true;
  }

  friend bool operator==(const Point& a, const Point& b) {
    return a.p == b.p && a.coords == b.coords;
  }
};

// Sparse multivariate polynomial over F_p in canonical form: no stored
// coefficient is zero and terms iterate in graded-lex order.  Values are
// immutable in spirit; every operation returns a fresh polynomial.
class MPoly {
 public:
  using TermMap = std::map<Exponents, u64, TermOrder>;

  MPoly(std::size_t n, u64 p) : n_(n), p_(p) {}

  static MPoly zero(std::size_t n, u64 p) { return MPoly(n, p); }
  static MPoly constant(std::size_t n, u64 p, i64 c);
  // x_i with 1-based index
  static MPoly variable(std::size_t n, u64 p, std::size_t i);

  std::size_t nvars() const { return n_; }
  u64 p() const { return p_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && exponent_sum(terms_.begin()->first) == 0);
  }

  // Total degree; disengaged for the zero polynomial ("minus infinity").
  std::optional<u64> degree() const {
    if (terms_.empty()) return std::nullopt;
    return exponent_sum(terms_.begin()->first);  // leading term comes first
  }
  u64 degree_in(std::size_t var) const;  // 1-based; 0 for the zero polynomial

  u64 coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }
  u64 constant_term() const { return coeff(Exponents(n_, 0)); }

  // Adds c * x^e, dropping the term if the sum cancels.
  void add_term(const Exponents& e, u64 c);

  FieldElement evaluate(std::span<const u64> point) const;
  FieldElement evaluate(const Point& a) const;

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_;
  u64 p_;
  TermMap terms_;
};

MPoly operator+(const MPoly& f, const MPoly& g);
MPoly operator-(const MPoly& f, const MPoly& g);
MPoly operator*(const MPoly& f, const MPoly& g);
MPoly operator-(const MPoly& f);
MPoly scale(const MPoly& f, u64 c);

// Grammar: integer literals (optional sign), variables x1..xn, operators
// + - * ^ and parentheses; ^ binds tightest, then *, then +/-.  Implicit
// multiplication is rejected.  Integer literals reduce mod p.
MPoly parse_poly(std::string_view text, std::size_t n, const PrimeField& field);

// Graded-lex term order, balanced-representative coefficients; parses back
// to the same polynomial.
std::string to_string(const MPoly& f);

// f(x_1 - u_1, ..., x_n - u_n), computed one variable at a time by
// Horner-style substitution; degree is preserved.
MPoly shift(const MPoly& f, const Point& u);

// k-th Hasse derivative with respect to x_var (1-based): each term
// c * x_var^s picks up binomial(s, k) and drops to x_var^(s-k).
MPoly hasse_derivative(const MPoly& f, std::size_t var, u64 k);

// Composed partial Hasse derivatives for a multi-index; any negative entry
// yields the zero polynomial.
MPoly hasse_multi(const MPoly& f, std::span<const i64> s);

// (D_x1 f, ..., D_xn f)
std::vector<MPoly> gradient(const MPoly& f);

MPoly homogeneous_component(const MPoly& f, u64 j);

// Sum over all multi-indices s of (D^(s) f)(y) * (x - y)^s; equals f exactly
// in every characteristic.
MPoly taylor_reconstruct(const MPoly& f, const Point& y);

// g(args_1, ..., args_k) for a k-variate g; all args share variable count
// and field.
MPoly compose(const MPoly& g, const std::vector<MPoly>& args);

// binomial(n, k) mod p via the Pascal recurrence with entries reduced mod p;
// exact for every n, k including n >= p.
u64 binomial_mod(u64 n, u64 k, u64 p);

}  // namespace shiftvar

#endif  // SHIFTVAR_MULTIPOLY_HPP
