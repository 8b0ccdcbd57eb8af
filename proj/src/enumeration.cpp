#include "shiftvar/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shiftvar/shift_analysis.hpp"

namespace shiftvar {

namespace {

std::optional<u128> checked_mul(u128 a, u128 b) {
  if (a == 0 || b == 0) return u128{0};
  const u128 r = a * b;
  if (r / a != b) return std::nullopt;
  return r;
}

std::optional<u128> checked_pow(u128 base, u64 e) {
  u128 r = 1;
  for (u64 i = 0; i < e; ++i) {
    auto m = checked_mul(r, base);
    if (!m) return std::nullopt;
    r = *m;
  }
  return r;
}

// p^n as a plain u64, guarded against the budget beforehand
u64 grid_size(u64 p, std::size_t n, u64 budget) {
  auto total = checked_pow(p, n);
  if (!total || *total > budget)
    fail(ErrorCode::BudgetExceeded,
         "p^n exceeds the enumeration budget of " + std::to_string(budget));
  return static_cast<u64>(*total);
}

}  // namespace

void validate_instance(const VarietyInstance& v) {
  if (v.n == 0) fail(ErrorCode::DimensionMismatch, "ambient dimension is 0");
  for (const auto& f : v.polys) {
    if (f.nvars() != v.n)
      fail(ErrorCode::DimensionMismatch, "polynomial arity != n");
    if (f.p() != v.p) fail(ErrorCode::FieldMismatch, "polynomial field != p");
  }
  const auto& md = v.metadata;
  if (md.r > v.n || md.d < 1 || md.bigD > md.d)
    fail(ErrorCode::MetadataMissing,
         "metadata violates 0 <= r <= n, d >= 1, bigD <= d");
}

// ---------------------------------------------------------------------------

PointSet PointSet::from_sorted_rows(std::size_t n, u64 p,
                                    std::vector<u64> flat_rows) {
  PointSet s(n, p);
  s.flat_ = std::move(flat_rows);
  return s;
}

bool PointSet::contains(std::span<const u64> coords) const {
  if (coords.size() != n_)
    fail(ErrorCode::DimensionMismatch, "coordinate count != n");
  // lower_bound over the sorted rows
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const u64* row = flat_.data() + mid * n_;
    int cmp = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (row[i] != coords[i]) {
        cmp = row[i] < coords[i] ? -1 : 1;
        break;
      }
    }
    if (cmp < 0)
      lo = mid + 1;
    else if (cmp > 0)
      hi = mid;
    else
      return true;
  }
  return false;
}

void PointSet::insert_coords(std::span<const u64> coords) {
  if (coords.size() != n_)
    fail(ErrorCode::DimensionMismatch, "coordinate count != n");
  flat_.insert(flat_.end(), coords.begin(), coords.end());
}

void PointSet::finalize() {
  const std::size_t count = size();
  if (count <= 1) return;
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  const auto row_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(
        flat_.begin() + a * n_, flat_.begin() + (a + 1) * n_,
        flat_.begin() + b * n_, flat_.begin() + (b + 1) * n_);
  };
  std::sort(order.begin(), order.end(), row_less);
  std::vector<u64> out;
  out.reserve(flat_.size());
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = order[k];
    if (k > 0) {
      const std::size_t prev = order[k - 1];
      if (std::equal(flat_.begin() + i * n_, flat_.begin() + (i + 1) * n_,
                     flat_.begin() + prev * n_))
        continue;
    }
    out.insert(out.end(), flat_.begin() + i * n_, flat_.begin() + (i + 1) * n_);
  }
  flat_ = std::move(out);
}

// ---------------------------------------------------------------------------
// Recursive dense representation used only inside the exhaustive scan:
// a polynomial in the variables from `level` on, as coefficients in the
// current variable.

namespace {

struct DenseRec {
  u64 cval = 0;
  bool leaf = true;
  std::vector<DenseRec> coeffs;

  bool is_zero() const { return leaf && cval == 0; }
  bool is_nonzero_const() const { return leaf && cval != 0; }
};

void normalize(DenseRec& d) {
  if (d.leaf) return;
  while (!d.coeffs.empty() && d.coeffs.back().is_zero()) d.coeffs.pop_back();
  if (d.coeffs.empty()) {
    d.leaf = true;
    d.cval = 0;
  } else if (d.coeffs.size() == 1 && d.coeffs[0].leaf) {
    d.leaf = true;
    d.cval = d.coeffs[0].cval;
    d.coeffs.clear();
  }
}

DenseRec build_dense(const std::vector<std::pair<Exponents, u64>>& terms,
                     std::size_t level, std::size_t n) {
  if (terms.empty()) return DenseRec{};
  if (level == n) {
    u64 v = 0;
    for (const auto& t : terms) v = t.second;  // canonical form: single term
    return DenseRec{v, true, {}};
  }
  std::uint32_t dmax = 0;
  for (const auto& [e, c] : terms) dmax = std::max(dmax, e[level]);
  std::vector<std::vector<std::pair<Exponents, u64>>> groups(dmax + 1);
  for (const auto& t : terms) groups[t.first[level]].push_back(t);
  DenseRec d;
  d.leaf = false;
  d.coeffs.resize(dmax + 1);
  for (std::uint32_t k = 0; k <= dmax; ++k)
    d.coeffs[k] = build_dense(groups[k], level + 1, n);
  normalize(d);
  return d;
}

DenseRec dense_add(const DenseRec& a, const DenseRec& b, u64 p);

DenseRec dense_scale(const DenseRec& a, u64 c, u64 p) {
  if (c == 0) return DenseRec{};
  if (a.leaf) return DenseRec{mul_mod(a.cval, c, p), true, {}};
  DenseRec r;
  r.leaf = false;
  r.coeffs.reserve(a.coeffs.size());
  for (const auto& x : a.coeffs) r.coeffs.push_back(dense_scale(x, c, p));
  normalize(r);
  return r;
}

DenseRec dense_add(const DenseRec& a, const DenseRec& b, u64 p) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.leaf && b.leaf) return DenseRec{add_mod(a.cval, b.cval, p), true, {}};
  // promote a leaf to a degree-0 coefficient list
  auto as_list = [](const DenseRec& d) {
    if (!d.leaf) return d;
    DenseRec r;
    r.leaf = false;
    r.coeffs.push_back(d);
    return r;
  };
  const DenseRec la = as_list(a), lb = as_list(b);
  DenseRec r;
  r.leaf = false;
  r.coeffs.resize(std::max(la.coeffs.size(), lb.coeffs.size()));
  for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
    if (k < la.coeffs.size() && k < lb.coeffs.size())
      r.coeffs[k] = dense_add(la.coeffs[k], lb.coeffs[k], p);
    else if (k < la.coeffs.size())
      r.coeffs[k] = la.coeffs[k];
    else
      r.coeffs[k] = lb.coeffs[k];
  }
  normalize(r);
  return r;
}

// substitute the current variable by c (Horner), moving one level down
DenseRec dense_subst(const DenseRec& d, u64 c, u64 p) {
  if (d.leaf) return d;
  DenseRec acc = d.coeffs.back();
  for (std::size_t k = d.coeffs.size() - 1; k-- > 0;)
    acc = dense_add(dense_scale(acc, c, p), d.coeffs[k], p);
  return acc;
}

struct ScanContext {
  u64 p;
  std::size_t n;
  std::vector<u64>* out;   // flat coordinate rows, lexicographic
  std::vector<u64> cur;    // coordinates fixed so far
};

// append every completion of the current prefix
void emit_subgrid(ScanContext& ctx, std::size_t level) {
  if (level == ctx.n) {
    ctx.out->insert(ctx.out->end(), ctx.cur.begin(), ctx.cur.end());
    return;
  }
  for (u64 c = 0; c < ctx.p; ++c) {
    ctx.cur[level] = c;
    emit_subgrid(ctx, level + 1);
  }
}

void scan(ScanContext& ctx, std::size_t level,
          const std::vector<DenseRec>& active) {
  if (active.empty()) {
    emit_subgrid(ctx, level);
    return;
  }
  if (level == ctx.n) return;  // a nonzero constraint survived: no point here
  for (u64 c = 0; c < ctx.p; ++c) {
    std::vector<DenseRec> next;
    next.reserve(active.size());
    bool pruned = false;
    for (const auto& f : active) {
      DenseRec s = dense_subst(f, c, ctx.p);
      if (s.is_nonzero_const()) {
        pruned = true;
        break;
      }
      if (!s.is_zero()) next.push_back(std::move(s));
    }
    if (!pruned) {
      ctx.cur[level] = c;
      scan(ctx, level + 1, next);
    }
  }
}

}  // namespace

PointSet rational_points(const VarietyInstance& v, u64 budget) {
  validate_instance(v);
  grid_size(v.p, v.n, budget);

  std::vector<DenseRec> active;
  for (const auto& f : v.polys) {
    std::vector<std::pair<Exponents, u64>> terms(f.terms().begin(),
                                                 f.terms().end());
    DenseRec d = build_dense(terms, 0, v.n);
    if (d.is_nonzero_const()) return PointSet(v.n, v.p);  // no zeros at all
    if (!d.is_zero()) active.push_back(std::move(d));
  }

  std::vector<u64> rows;
  ScanContext ctx{v.p, v.n, &rows, std::vector<u64>(v.n, 0)};
  scan(ctx, 0, active);  // emits rows in lexicographic order
  return PointSet::from_sorted_rows(v.n, v.p, std::move(rows));
}

PointSet ball(u64 h, std::size_t n, const PrimeField& field, u64 budget) {
  const u64 p = field.p();
  if (h > 0 && 2 * h >= p)
    fail(ErrorCode::RadiusTooLarge, "need 2h < p for the standard ball");
  const u64 side = 2 * h + 1;
  auto total = checked_pow(side, n);
  if (!total || *total > budget)
    fail(ErrorCode::BudgetExceeded, "ball too large for the budget");

  std::vector<u64> values(side);  // canonical residues of -h..h, ascending
  for (u64 k = 0; k < side; ++k)
    values[k] = canonical_mod(static_cast<i64>(k) - static_cast<i64>(h), p);

  PointSet out(n, p);
  std::vector<u64> idx(n, 0), coords(n, values[0]);
  for (;;) {
    out.insert_coords(coords);
    std::size_t i = n;
    while (i-- > 0) {
      if (++idx[i] < side) {
        coords[i] = values[idx[i]];
        break;
      }
      idx[i] = 0;
      coords[i] = values[0];
      if (i == 0) {
        out.finalize();
        return out;
      }
    }
  }
}

PointSet difference_set(const PointSet& u) {
  PointSet out(u.n(), u.p());
  std::vector<u64> d(u.n());
  for (std::size_t ia = 0; ia < u.size(); ++ia) {
    const auto a = u.coords_at(ia);
    for (std::size_t ib = 0; ib < u.size(); ++ib) {
      const auto b = u.coords_at(ib);
      for (std::size_t i = 0; i < u.n(); ++i)
        d[i] = sub_mod(a[i], b[i], u.p());
      out.insert_coords(d);
    }
  }
  out.finalize();
  return out;
}

namespace {

void require_compatible_sets(const PointSet& x, const PointSet& u) {
  if (x.n() != u.n() || x.p() != u.p())
    fail(ErrorCode::DimensionMismatch, "point sets are not compatible");
}

// shared driver for sumset and sumset_size: visits each sum point once, in
// lexicographic order
template <typename OnRow>
void for_each_sum_row(const PointSet& x, const PointSet& u, u64 budget,
                      OnRow&& on_row) {
  require_compatible_sets(x, u);
  const u64 p = x.p();
  const std::size_t n = x.n();
  auto total = checked_pow(p, n);

  // bit per grid point; never allocate more than 1 GiB of mask
  const bool small_grid = total &&
                          *total <= std::max<u64>(budget, 1u << 27) &&
                          *total <= (u64{1} << 33);
  if (small_grid) {
    // one bit per grid point, keyed by the base-p positional code
    const u64 grid = static_cast<u64>(*total);
    std::vector<std::uint64_t> bits((grid + 63) / 64, 0);
    std::vector<u64> s(n);
    for (std::size_t ix = 0; ix < x.size(); ++ix) {
      const auto a = x.coords_at(ix);
      for (std::size_t iu = 0; iu < u.size(); ++iu) {
        const auto uu = u.coords_at(iu);
        u64 code = 0;
        for (std::size_t i = 0; i < n; ++i)
          code = code * p + add_mod(a[i], uu[i], p);
        bits[code >> 6] |= (std::uint64_t{1} << (code & 63));
      }
    }
    std::vector<u64> row(n);
    for (u64 w = 0; w < bits.size(); ++w) {
      std::uint64_t word = bits[w];
      while (word) {
        const int b = __builtin_ctzll(word);
        word &= word - 1;
        u64 code = (w << 6) | static_cast<u64>(b);
        for (std::size_t i = n; i-- > 0;) {
          row[i] = code % p;
          code /= p;
        }
        on_row(std::span<const u64>(row));
      }
    }
    return;
  }

  // sparse fallback: materialize pair sums, sort rows, dedupe
  auto pairs = checked_mul(x.size(), u.size());
  if (!pairs || *pairs > std::min<u64>(budget, 50'000'000))
    fail(ErrorCode::BudgetExceeded, "sumset too large for the budget");
  PointSet acc(n, p);
  std::vector<u64> s(n);
  for (std::size_t ix = 0; ix < x.size(); ++ix) {
    const auto a = x.coords_at(ix);
    for (std::size_t iu = 0; iu < u.size(); ++iu) {
      const auto uu = u.coords_at(iu);
      for (std::size_t i = 0; i < n; ++i) s[i] = add_mod(a[i], uu[i], p);
      acc.insert_coords(s);
    }
  }
  acc.finalize();
  for (std::size_t i = 0; i < acc.size(); ++i) on_row(acc.coords_at(i));
}

}  // namespace

PointSet sumset(const PointSet& x, const PointSet& u, u64 budget) {
  std::vector<u64> rows;
  for_each_sum_row(x, u, budget, [&](std::span<const u64> row) {
    rows.insert(rows.end(), row.begin(), row.end());
  });
  return PointSet::from_sorted_rows(x.n(), x.p(), std::move(rows));
}

u64 sumset_size(const PointSet& x, const PointSet& u, u64 budget) {
  u64 count = 0;
  for_each_sum_row(x, u, budget, [&](std::span<const u64>) { ++count; });
  return count;
}

NeighborhoodReport compute_delta(const PointSet& x, const PointSet& u,
                                 u64 budget) {
  NeighborhoodReport rep;
  rep.count_x = x.size();
  rep.count_u = u.size();
  rep.count_sumset = sumset_size(x, u, budget);
  const auto product = checked_mul(rep.count_x, rep.count_u);
  if (!product || *product > ~u64{0})
    fail(ErrorCode::BudgetExceeded, "#X * #U overflows");
  rep.delta = static_cast<u64>(*product) - rep.count_sumset;
  return rep;
}

bool closed_under_shifts_to_zero(const PointSet& u) {
  std::vector<u64> coords(u.n());
  for (std::size_t idx = 0; idx < u.size(); ++idx) {
    const auto row = u.coords_at(idx);
    std::copy(row.begin(), row.end(), coords.begin());
    for (std::size_t i = 0; i < u.n(); ++i) {
      if (coords[i] == 0) continue;
      const u64 saved = coords[i];
      coords[i] = 0;
      if (!u.contains(coords)) return false;
      coords[i] = saved;
    }
  }
  return true;
}

u64 pair_overlap_sum(const PointSet& x, const PointSet& u, u64 budget) {
  require_compatible_sets(x, u);
  const auto cost = checked_mul(checked_mul(x.size(), x.size()).value_or(~u128{0}),
                                u.size());
  if (!cost || *cost > budget)
    fail(ErrorCode::BudgetExceeded, "#X^2 * #U exceeds the budget");

  const u64 p = x.p();
  const std::size_t n = x.n();

  u64 total = 0;
  std::vector<u64> diff(n);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto a = x.coords_at(i);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i == j) continue;
      const auto b = x.coords_at(j);
      // #((a+U) cap (b+U)) = #{w in U : a + w - b in U}
      for (std::size_t iw = 0; iw < u.size(); ++iw) {
        const auto w = u.coords_at(iw);
        for (std::size_t k = 0; k < n; ++k)
          diff[k] = sub_mod(add_mod(a[k], w[k], p), b[k], p);
        if (u.contains(diff)) ++total;
      }
    }
  }

  // the overlap sum is sandwiched between delta and the shifted-overlap
  // bound; violating either means a bug, not a property of the input
  const NeighborhoodReport rep = compute_delta(x, u, budget);
  if (rep.delta > total)
    throw std::logic_error("pair overlap sum fell below delta");
  if (total > shifted_overlap_bound(x, u))
    throw std::logic_error("pair overlap sum exceeds the shifted-overlap bound");
  return total;
}

u64 shifted_overlap_bound(const PointSet& x, const PointSet& u) {
  require_compatible_sets(x, u);
  const PointSet diffs = difference_set(u);
  const u64 p = x.p();
  const std::size_t n = x.n();
  u64 sum = 0;
  std::vector<u64> b(n);
  for (std::size_t iw = 0; iw < diffs.size(); ++iw) {
    const auto w = diffs.coords_at(iw);
    bool zero = true;
    for (u64 c : w) zero = zero && c == 0;
    if (zero) continue;
    // #(X cap X^{(w)}) = #{a in X : a - w in X}
    for (std::size_t ia = 0; ia < x.size(); ++ia) {
      const auto a = x.coords_at(ia);
      for (std::size_t k = 0; k < n; ++k) b[k] = sub_mod(a[k], w[k], p);
      if (x.contains(b)) ++sum;
    }
  }
  return sum * u.size();
}

std::optional<u64> standard_ball_radius(const PointSet& u) {
  if (u.size() == 0) return std::nullopt;
  u64 h = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    h = std::max(h, u.point_at(i).inf_norm());
  const auto expected = checked_pow(2 * h + 1, u.n());
  if (!expected || *expected != u.size()) return std::nullopt;
  // every member has norm <= h and the cardinalities agree, so U = U_h
  return h;
}

// ---------------------------------------------------------------------------

namespace {

constexpr long double kGuard = 1e-9L;

// product of u128 factors, disengaged on overflow
std::optional<u128> prod(std::initializer_list<u128> factors) {
  u128 r = 1;
  for (u128 f : factors) {
    auto m = checked_mul(r, f);
    if (!m) return std::nullopt;
    r = *m;
  }
  return r;
}

struct BoundBuilder {
  std::vector<BoundCheck>& out;

  void not_applicable(const std::string& name) {
    out.push_back(BoundCheck{name, 0, 0, false, false});
  }

  // lhs <= rhs with exact integers; falls back to the guarded float compare
  // when the exact right side overflowed
  void upper(const std::string& name, u128 lhs, std::optional<u128> rhs,
             long double rhs_float) {
    if (rhs) {
      out.push_back(BoundCheck{name, static_cast<long double>(lhs),
                               static_cast<long double>(*rhs), lhs <= *rhs,
                               true});
    } else {
      guarded_upper(name, static_cast<long double>(lhs), rhs_float);
    }
  }

  // lhs <= rhs where rhs is inexact; round the right side up
  void guarded_upper(const std::string& name, long double lhs,
                     long double rhs) {
    out.push_back(BoundCheck{name, lhs, rhs, lhs <= rhs * (1 + kGuard), true});
  }
};

u128 abs_diff(u128 a, u128 b) { return a > b ? a - b : b - a; }

}  // namespace

NeighborhoodReport bound_report(const VarietyInstance& v, const PointSet& u,
                                bool shift_free, u64 budget) {
  validate_instance(v);
  if (u.n() != v.n || u.p() != v.p)
    fail(ErrorCode::DimensionMismatch, "neighborhood does not match instance");

  const PointSet x = rational_points(v, budget);
  NeighborhoodReport rep = compute_delta(x, u, budget);

  const u64 p = v.p;
  const auto& md = v.metadata;
  const u64 diff_count = difference_set(u).size();
  const std::optional<u64> ball_h = standard_ball_radius(u);

  const long double pd = static_cast<long double>(p);
  const long double dd = static_cast<long double>(md.d);
  const long double DD = static_cast<long double>(md.bigD);
  const long double uu = static_cast<long double>(u.size());
  const long double uudiff = static_cast<long double>(diff_count);
  const long double q_r = std::pow(pd, static_cast<long double>(md.r));
  const long double q_rm1 = std::pow(pd, static_cast<long double>(md.r) - 1);
  const long double q_rmh = std::pow(pd, static_cast<long double>(md.r) - 0.5L);
  const long double d_133 = std::pow(dd, 13.0L / 3.0L);
  const long double D_133 = std::pow(DD, 13.0L / 3.0L);

  const u128 count_x = rep.count_x;
  const u128 count_u = rep.count_u;
  const u128 count_sum = rep.count_sumset;
  const std::optional<u128> p_r = checked_pow(p, md.r);
  const std::optional<u128> p_rm1_opt =
      md.r >= 1 ? checked_pow(p, md.r - 1) : std::nullopt;
  const bool integral_rm1 = p_rm1_opt.has_value();
  const u128 p_rm1 = p_rm1_opt.value_or(0);

  BoundBuilder bb{rep.bounds};

  // #(X+U) <= #X * #U
  bb.upper("product_bound", count_sum, prod({count_x, count_u}),
           static_cast<long double>(count_x) * static_cast<long double>(count_u));

  // #X <= d * p^r
  bb.upper("point_count_upper", count_x,
           p_r ? prod({md.d, *p_r}) : std::nullopt, dd * q_r);

  // |#X - sigma p^r| <= (D-1)(D-2) p^{r-1/2} + (5 D^{13/3} + d^2) p^{r-1}
  if (md.sigma > 0 && p > md.d && p_r && prod({md.sigma, *p_r})) {
    const u128 lhs = abs_diff(count_x, *prod({md.sigma, *p_r}));
    const long double rhs =
        (DD - 1) * (DD - 2) * q_rmh + (5 * D_133 + dd * dd) * q_rm1;
    bb.guarded_upper("point_count_weil", static_cast<long double>(lhs), rhs);
  } else {
    bb.not_applicable("point_count_weil");
  }

  // delta <= #U (#(U-U) - 1) d^2 p^{r-1}
  if (shift_free) {
    bb.upper("delta_shiftfree", rep.delta,
             integral_rm1
                 ? prod({count_u, diff_count - 1, md.d, md.d, p_rm1})
                 : std::nullopt,
             uu * (uudiff - 1) * dd * dd * q_rm1);
  } else {
    bb.not_applicable("delta_shiftfree");
  }

  // sigma = 0: #(X+U) <= #U d^2 p^{r-1} / 2, compared as 2 lhs <= rhs
  if (md.sigma == 0) {
    const auto rhs = integral_rm1 ? prod({count_u, md.d, md.d, p_rm1})
                                  : std::nullopt;
    if (rhs) {
      rep.bounds.push_back(BoundCheck{
          "sumset_no_essential", static_cast<long double>(count_sum),
          static_cast<long double>(*rhs) / 2, 2 * count_sum <= *rhs, true});
    } else {
      bb.guarded_upper("sumset_no_essential",
                       static_cast<long double>(count_sum),
                       uu * dd * dd * q_rm1 / 2);
    }
  } else {
    bb.not_applicable("sumset_no_essential");
  }

  // |#(X+U) - #U sigma p^r| <= #U (D^2 p^{r-1/2} + (5 D^{13/3} + #(U-U) d^2) p^{r-1})
  if (md.sigma > 0 && shift_free && p_r && prod({count_u, md.sigma, *p_r})) {
    const u128 lhs = abs_diff(count_sum, *prod({count_u, md.sigma, *p_r}));
    const long double rhs =
        uu * (DD * DD * q_rmh + (5 * D_133 + uudiff * dd * dd) * q_rm1);
    bb.guarded_upper("sumset_weil", static_cast<long double>(lhs), rhs);
  } else {
    bb.not_applicable("sumset_weil");
  }

  // standard-ball forms: delta <= ((2h+1)(4h+1))^n d^2 p^{r-1} and the
  // matching two-sided sumset estimate
  if (shift_free && ball_h) {
    const u64 h = *ball_h;
    const auto factor = checked_pow((2 * h + 1) * (4 * h + 1), v.n);
    bb.upper("delta_ball", rep.delta,
             factor && integral_rm1 ? prod({*factor, md.d, md.d, p_rm1})
                                    : std::nullopt,
             std::pow((2.0L * h + 1) * (4.0L * h + 1),
                      static_cast<long double>(v.n)) *
                 dd * dd * q_rm1);
  } else {
    bb.not_applicable("delta_ball");
  }

  if (shift_free && ball_h && md.sigma > 0 && p_r &&
      prod({count_u, md.sigma, *p_r})) {
    const u64 h = *ball_h;
    const u128 lhs = abs_diff(count_sum, *prod({count_u, md.sigma, *p_r}));
    const long double ball_sz =
        std::pow(2.0L * h + 1, static_cast<long double>(v.n));
    const long double diff_sz =
        std::pow(4.0L * h + 1, static_cast<long double>(v.n));
    const long double rhs =
        ball_sz * (DD * DD * q_rmh + (5 * D_133 + diff_sz * dd * dd) * q_rm1);
    bb.guarded_upper("sumset_ball_weil", static_cast<long double>(lhs), rhs);
  } else {
    bb.not_applicable("sumset_ball_weil");
  }

  // lower bound for a shifted absolutely irreducible variety:
  // with alpha = d^2 + (5 d^{13/3} + d^2 #(U-U)) p^{-1/2} and p >= 4 alpha^2,
  // delta >= p^r / 2 (compared exactly as 2 delta >= p^r)
  const bool abs_irreducible = md.sigma == 1 && md.bigD == md.d;
  if (!shift_free && abs_irreducible && closed_under_shifts_to_zero(u) &&
      p_r) {
    const long double alpha =
        dd * dd + (5 * d_133 + dd * dd * uudiff) / std::sqrt(pd);
    if (pd >= 4 * alpha * alpha * (1 - kGuard)) {
      rep.bounds.push_back(BoundCheck{"delta_lower_shifted",
                                      static_cast<long double>(rep.delta),
                                      q_r / 2, u128{2} * rep.delta >= *p_r,
                                      true});
    } else {
      bb.not_applicable("delta_lower_shifted");
    }
  } else {
    bb.not_applicable("delta_lower_shifted");
  }

  // hypersurface forms (r = n - 1)
  if (shift_free && md.r + 1 == v.n) {
    bb.upper("delta_hypersurface", rep.delta,
             integral_rm1 ? prod({count_u, diff_count, md.d, md.d, p_rm1})
                          : std::nullopt,
             uu * uudiff * dd * dd * q_rm1);
  } else {
    bb.not_applicable("delta_hypersurface");
  }

  if (shift_free && md.r + 1 == v.n && md.sigma > 0 && p_r &&
      prod({count_u, md.sigma, *p_r})) {
    const u128 lhs = abs_diff(count_sum, *prod({count_u, md.sigma, *p_r}));
    const long double rhs =
        uu * (DD * DD * q_rmh + (5 * D_133 + uudiff * dd * dd) * q_rm1);
    bb.guarded_upper("sumset_hypersurface_weil", static_cast<long double>(lhs),
                     rhs);
  } else {
    bb.not_applicable("sumset_hypersurface_weil");
  }

  return rep;
}

SystemShiftInvariance system_shift_invariant(const VarietyInstance& v,
                                             const Point& u, u64 budget) {
  validate_instance(v);
  if (u.dim() != v.n || u.p != v.p)
    fail(ErrorCode::DimensionMismatch, "shift does not match instance");

  SystemShiftInvariance res;
  res.per_generator = true;
  for (const auto& f : v.polys)
    res.per_generator = res.per_generator && is_shift_invariant(f, u);

  const PointSet x = rational_points(v, budget);
  VarietyInstance shifted = v;
  for (auto& f : shifted.polys) f = shift(f, u);
  const PointSet xs = rational_points(shifted, budget);
  res.point_sets_equal = (x == xs);
  res.heuristic = res.point_sets_equal && !res.per_generator &&
                  v.polys.size() > 1;
  return res;
}

}  // namespace shiftvar
