#include "shiftvar/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace shiftvar {

MPoly MPoly::constant(std::size_t n, u64 p, i64 c) {
  MPoly f(n, p);
  f.add_term(Exponents(n, 0), canonical_mod(c, p));
  return f;
}

MPoly MPoly::variable(std::size_t n, u64 p, std::size_t i) {
  if (i < 1 || i > n)
    fail(ErrorCode::VariableIndexOutOfRange, "variable index out of range");
  MPoly f(n, p);
  Exponents e(n, 0);
  e[i - 1] = 1;
  f.add_term(e, 1);
  return f;
}

void MPoly::add_term(const Exponents& e, u64 c) {
  if (e.size() != n_) fail(ErrorCode::ArityMismatch, "exponent arity mismatch");
  c %= p_;
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second = add_mod(it->second, c, p_);
    if (it->second == 0) terms_.erase(it);
  }
}

u64 MPoly::degree_in(std::size_t var) const {
  u64 d = 0;
  for (const auto& [e, c] : terms_) d = std::max<u64>(d, e[var - 1]);
  return d;
}

FieldElement MPoly::evaluate(std::span<const u64> point) const {
  if (point.size() != n_)
    fail(ErrorCode::ArityMismatch, "evaluation point has wrong dimension");
  // power tables per variable up to the per-variable degree
  std::vector<std::vector<u64>> pw(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const u64 d = degree_in(i + 1);
    pw[i].resize(d + 1);
    pw[i][0] = 1 % p_;
    for (u64 k = 1; k <= d; ++k) pw[i][k] = mul_mod(pw[i][k - 1], point[i], p_);
  }
  u64 acc = 0;
  for (const auto& [e, c] : terms_) {
    u64 t = c;
    for (std::size_t i = 0; i < n_; ++i)
      if (e[i]) t = mul_mod(t, pw[i][e[i]], p_);
    acc = add_mod(acc, t, p_);
  }
  return {acc, p_};
}

FieldElement MPoly::evaluate(const Point& a) const {
  if (a.p != p_) fail(ErrorCode::FieldMismatch, "point in a different field");
  return evaluate(std::span<const u64>(a.coords));
}

namespace {

void require_compatible(const MPoly& f, const MPoly& g) {
  if (f.p() != g.p())
    fail(ErrorCode::FieldMismatch, "polynomials over different fields");
  if (f.nvars() != g.nvars())
    fail(ErrorCode::ArityMismatch, "polynomials with different arity");
}

}  // namespace

MPoly operator+(const MPoly& f, const MPoly& g) {
  require_compatible(f, g);
  MPoly r = f;
  for (const auto& [e, c] : g.terms()) r.add_term(e, c);
  return r;
}

MPoly operator-(const MPoly& f, const MPoly& g) {
  require_compatible(f, g);
  MPoly r = f;
  for (const auto& [e, c] : g.terms()) r.add_term(e, neg_mod(c, f.p()));
  return r;
}

MPoly operator-(const MPoly& f) {
  MPoly r(f.nvars(), f.p());
  for (const auto& [e, c] : f.terms()) r.add_term(e, neg_mod(c, f.p()));
  return r;
}

MPoly operator*(const MPoly& f, const MPoly& g) {
  require_compatible(f, g);
  MPoly r(f.nvars(), f.p());
  Exponents e(f.nvars());
  for (const auto& [ef, cf] : f.terms())
    for (const auto& [eg, cg] : g.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ef[i] + eg[i];
      r.add_term(e, mul_mod(cf, cg, f.p()));
    }
  return r;
}

MPoly scale(const MPoly& f, u64 c) {
  MPoly r(f.nvars(), f.p());
  c %= f.p();
  if (c == 0) return r;
  for (const auto& [e, cf] : f.terms()) r.add_term(e, mul_mod(cf, c, f.p()));
  return r;
}

// ---------------------------------------------------------------------------
// Parser: expr := [sign] term (('+'|'-') term)*
//         term := factor ('*' factor)*
//         factor := base ['^' nat]
//         base := nat | var | '(' expr ')'

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;
  std::size_t n;
  const PrimeField& field;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void error(const std::string& msg) {
    fail(ErrorCode::SyntaxError,
         msg + " at offset " + std::to_string(pos));
  }

  bool at_digit() {
    skip_ws();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }

  // Natural literal reduced mod p; accepts arbitrarily long digit strings.
  u64 parse_nat_mod() {
    skip_ws();
    if (!at_digit()) error("expected integer");
    u64 v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = add_mod(mul_mod(v, 10 % field.p(), field.p()),
                  static_cast<u64>(s[pos] - '0') % field.p(), field.p());
      ++pos;
    }
    return v;
  }

  // Small natural number (exponents, variable indices).
  u64 parse_nat_small() {
    skip_ws();
    if (!at_digit()) error("expected integer");
    u64 v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<u64>(s[pos] - '0');
      if (v > 1'000'000) error("number too large");
      ++pos;
    }
    return v;
  }

  MPoly parse_base() {
    skip_ws();
    if (pos >= s.size()) error("unexpected end of input");
    if (accept('(')) {
      MPoly e = parse_expr();
      if (!accept(')')) error("expected ')'");
      return e;
    }
    const char c = s[pos];
    if (c == 'x' || c == 'X') {
      ++pos;
      const u64 idx = parse_nat_small();
      if (idx < 1 || idx > n)
        fail(ErrorCode::VariableIndexOutOfRange,
             "variable x" + std::to_string(idx) + " exceeds arity " +
                 std::to_string(n));
      return MPoly::variable(n, field.p(), idx);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      MPoly r(n, field.p());
      r.add_term(Exponents(n, 0), parse_nat_mod());
      return r;
    }
    error("unexpected character");
  }

  MPoly parse_factor() {
    MPoly b = parse_base();
    if (accept('^')) {
      const u64 e = parse_nat_small();
      MPoly r = MPoly::constant(n, field.p(), 1);
      for (u64 i = 0; i < e; ++i) r = r * b;
      return r;
    }
    return b;
  }

  MPoly parse_term() {
    MPoly r = parse_factor();
    for (;;) {
      if (accept('*')) {
        r = r * parse_factor();
        continue;
      }
      // a literal or variable directly after a factor means implicit
      // multiplication, which the grammar rejects
      skip_ws();
      if (pos < s.size() &&
          (std::isdigit(static_cast<unsigned char>(s[pos])) ||
           s[pos] == 'x' || s[pos] == 'X' || s[pos] == '('))
        error("implicit multiplication is not allowed");
      break;
    }
    return r;
  }

  MPoly parse_expr() {
    bool neg = false;
    skip_ws();
    if (accept('-'))
      neg = true;
    else
      accept('+');
    MPoly r = parse_term();
    if (neg) r = -r;
    for (;;) {
      if (accept('+')) {
        r = r + parse_term();
      } else if (accept('-')) {
        r = r - parse_term();
      } else {
        break;
      }
    }
    return r;
  }
};

}  // namespace

MPoly parse_poly(std::string_view text, std::size_t n,
                 const PrimeField& field) {
  Parser parser{text, 0, n, field};
  MPoly f = parser.parse_expr();
  parser.skip_ws();
  if (parser.pos != text.size()) parser.error("trailing input");
  return f;
}

std::string to_string(const MPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    const i64 b = balanced_mod(c, f.p());
    const bool negative = b < 0;
    const u64 mag = static_cast<u64>(negative ? -b : b);
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    const bool has_vars = exponent_sum(e) > 0;
    bool printed = false;
    if (mag != 1 || !has_vars) {
      out << mag;
      printed = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) out << "*";
      out << "x" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
      printed = true;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------

MPoly shift(const MPoly& f, const Point& u) {
  if (u.p != f.p()) fail(ErrorCode::FieldMismatch, "shift in a different field");
  if (u.dim() != f.nvars())
    fail(ErrorCode::ArityMismatch, "shift vector has wrong dimension");
  MPoly g = f;
  const u64 p = f.p();
  for (std::size_t var = 1; var <= f.nvars(); ++var) {
    const u64 ui = u.coords[var - 1];
    if (ui == 0) continue;
    // view g in x_var and substitute x_var <- x_var - u_i by Horner
    const u64 d = g.degree_in(var);
    std::vector<MPoly> coeffs(d + 1, MPoly::zero(f.nvars(), p));
    for (const auto& [e, c] : g.terms()) {
      Exponents stripped = e;
      const auto k = stripped[var - 1];
      stripped[var - 1] = 0;
      coeffs[k].add_term(stripped, c);
    }
    MPoly lin = MPoly::variable(f.nvars(), p, var);
    lin.add_term(Exponents(f.nvars(), 0), neg_mod(ui, p));  // x_var - u_i
    MPoly acc = coeffs[d];
    for (std::size_t k = d; k-- > 0;) acc = acc * lin + coeffs[k];
    g = std::move(acc);
  }
  return g;
}

u64 binomial_mod(u64 n, u64 k, u64 p) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  if (k == 0) return 1 % p;
  // rolling Pascal row; every entry is the true binomial reduced mod p
  std::vector<u64> row(k + 1, 0);
  row[0] = 1 % p;
  for (u64 i = 1; i <= n; ++i) {
    for (u64 j = std::min(i, k); j >= 1; --j)
      row[j] = add_mod(row[j], row[j - 1], p);
  }
  return row[k];
}

MPoly hasse_derivative(const MPoly& f, std::size_t var, u64 k) {
  if (var < 1 || var > f.nvars())
    fail(ErrorCode::VariableIndexOutOfRange, "derivative variable out of range");
  if (k == 0) return f;
  MPoly r(f.nvars(), f.p());
  for (const auto& [e, c] : f.terms()) {
    if (e[var - 1] < k) continue;
    const u64 b = binomial_mod(e[var - 1], k, f.p());
    if (b == 0) continue;
    Exponents e2 = e;
    e2[var - 1] -= static_cast<std::uint32_t>(k);
    r.add_term(e2, mul_mod(c, b, f.p()));
  }
  return r;
}

MPoly hasse_multi(const MPoly& f, std::span<const i64> s) {
  if (s.size() != f.nvars())
    fail(ErrorCode::ArityMismatch, "multi-index has wrong length");
  for (i64 si : s)
    if (si < 0) return MPoly::zero(f.nvars(), f.p());
  MPoly g = f;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] > 0) g = hasse_derivative(g, i + 1, static_cast<u64>(s[i]));
  return g;
}

std::vector<MPoly> gradient(const MPoly& f) {
  std::vector<MPoly> g;
  g.reserve(f.nvars());
  for (std::size_t i = 1; i <= f.nvars(); ++i)
    g.push_back(hasse_derivative(f, i, 1));
  return g;
}

MPoly homogeneous_component(const MPoly& f, u64 j) {
  MPoly r(f.nvars(), f.p());
  for (const auto& [e, c] : f.terms())
    if (exponent_sum(e) == j) r.add_term(e, c);
  return r;
}

MPoly taylor_reconstruct(const MPoly& f, const Point& y) {
  if (y.p != f.p()) fail(ErrorCode::FieldMismatch, "center in a different field");
  if (y.dim() != f.nvars())
    fail(ErrorCode::ArityMismatch, "center has wrong dimension");
  const std::size_t n = f.nvars();
  const u64 p = f.p();
  MPoly acc(n, p);
  if (f.is_zero()) return acc;
  const u64 d = *f.degree();

  // powers of (x_i - y_i) up to the per-variable degree
  std::vector<std::vector<MPoly>> binom_pow(n);
  std::vector<u64> dmax(n);
  for (std::size_t i = 0; i < n; ++i) {
    dmax[i] = f.degree_in(i + 1);
    MPoly lin = MPoly::variable(n, p, i + 1);
    lin.add_term(Exponents(n, 0), neg_mod(y.coords[i], p));
    binom_pow[i].push_back(MPoly::constant(n, p, 1));
    for (u64 k = 1; k <= dmax[i]; ++k)
      binom_pow[i].push_back(binom_pow[i].back() * lin);
  }

  std::vector<i64> s(n, 0);
  // enumerate s with 0 <= s_i <= dmax_i and |s| <= d
  for (;;) {
    u64 total = 0;
    for (i64 si : s) total += static_cast<u64>(si);
    if (total <= d) {
      const MPoly ds = hasse_multi(f, s);
      const u64 v = ds.evaluate(y).v;
      if (v != 0) {
        MPoly term = MPoly::constant(n, p, static_cast<i64>(v));
        for (std::size_t i = 0; i < n; ++i)
          if (s[i] > 0) term = term * binom_pow[i][static_cast<u64>(s[i])];
        acc = acc + term;
      }
    }
    // odometer
    std::size_t i = 0;
    while (i < n) {
      if (static_cast<u64>(++s[i]) <= dmax[i]) break;
      s[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return acc;
}

MPoly compose(const MPoly& g, const std::vector<MPoly>& args) {
  if (args.size() != g.nvars())
    fail(ErrorCode::ArityMismatch, "composition needs one argument per variable");
  if (args.empty()) {
    // 0-variate g is a constant; result dimension is unknowable without
    // arguments, so treat it as a constant in 0 variables
    return g;
  }
  const std::size_t n = args[0].nvars();
  const u64 p = args[0].p();
  if (p != g.p()) fail(ErrorCode::FieldMismatch, "composition field mismatch");
  for (const auto& a : args)
    if (a.nvars() != n || a.p() != p)
      fail(ErrorCode::ArityMismatch, "composition arguments disagree");

  std::vector<std::vector<MPoly>> pw(args.size());
  for (std::size_t j = 0; j < args.size(); ++j)
    pw[j].push_back(MPoly::constant(n, p, 1));
  MPoly acc(n, p);
  for (const auto& [e, c] : g.terms()) {
    MPoly term = MPoly::constant(n, p, static_cast<i64>(c));
    for (std::size_t j = 0; j < args.size(); ++j) {
      while (pw[j].size() <= e[j]) pw[j].push_back(pw[j].back() * args[j]);
      if (e[j] > 0) term = term * pw[j][e[j]];
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace shiftvar
