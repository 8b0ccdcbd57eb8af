#include "shiftvar/hardness.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace shiftvar {

namespace {

u128 instance_sum(const ESSInstance& inst) {
  u128 b = 0;
  for (u64 ai : inst.a) b += ai;
  return b;
}

}  // namespace

std::optional<ESSCertificate> ess_brute(const ESSInstance& inst) {
  const std::size_t n = inst.a.size();
  if (n > 20) fail(ErrorCode::BudgetExceeded, "3^n scan supports n <= 20");

  u64 total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;

  // counter digits read most-significant-first as the assignment of index 1
  std::vector<unsigned> digit(n, 0);
  for (u64 v = 1; v < total; ++v) {
    std::size_t i = n;
    while (i-- > 0) {
      if (++digit[i] < 3) break;
      digit[i] = 0;
    }
    u128 sum_s = 0, sum_t = 0;
    bool has_s = false, has_t = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (digit[k] == 1) {
        sum_s += inst.a[k];
        has_s = true;
      } else if (digit[k] == 2) {
        sum_t += inst.a[k];
        has_t = true;
      }
    }
    if (has_s && has_t && sum_s == sum_t) {
      ESSCertificate cert;
      for (std::size_t k = 0; k < n; ++k) {
        if (digit[k] == 1) cert.s.push_back(k + 1);
        if (digit[k] == 2) cert.t.push_back(k + 1);
      }
      return cert;
    }
  }
  return std::nullopt;
}

std::pair<ESSInstance, PrimeField> ess_to_mod_prime(const ESSInstance& inst,
                                                    u64 seed) {
  const u128 b = instance_sum(inst);
  if (b >= kMaxModulus)
    fail(ErrorCode::BudgetExceeded, "coefficient sum exceeds the prime range");
  const u64 bound = static_cast<u64>(b);

  u64 start = bound;
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    start += rng() % (bound + 2);
  }
  const u64 p = next_prime_above(std::max(start, bound));
  const PrimeField field(p);

  ESSInstance reduced;
  reduced.a.reserve(inst.a.size());
  for (u64 ai : inst.a) reduced.a.push_back(ai % p);
  return {reduced, field};
}

ShiftFreenessInstance reduce_to_shiftfreeness(const ESSInstance& inst,
                                              const PrimeField& field) {
  const u128 b = instance_sum(inst);
  if (b >= field.p())
    fail(ErrorCode::PrimeTooSmall, "need p > sum(a_i)");
  const std::size_t n = inst.a.size();
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty instance");

  MPoly f(n, field.p());
  for (std::size_t i = 0; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 1;
    f.add_term(e, inst.a[i] % field.p());
  }
  return ShiftFreenessInstance{f, ball(1, n, field)};
}

std::vector<Point> scan_order(const PointSet& u) {
  std::vector<Point> pts;
  pts.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) pts.push_back(u.point_at(i));

  struct Key {
    u64 grade;
    std::vector<u64> ranks;
  };
  std::vector<Key> keys(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    u64 grade = 0;
    std::vector<u64> ranks(pts[i].dim());
    for (std::size_t k = 0; k < pts[i].dim(); ++k) {
      const i64 b = balanced_mod(pts[i].coords[k], pts[i].p);
      const u64 mag = static_cast<u64>(b < 0 ? -b : b);
      grade += mag;
      ranks[k] = b >= 0 ? mag : u.p() / 2 + mag;  // negatives after positives
    }
    keys[i] = Key{grade, std::move(ranks)};
  }

  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a].grade != keys[b].grade) return keys[a].grade < keys[b].grade;
    return keys[a].ranks < keys[b].ranks;
  });

  std::vector<Point> sorted;
  sorted.reserve(pts.size());
  for (std::size_t i : order) sorted.push_back(std::move(pts[i]));
  return sorted;
}

std::optional<Point> shift_search(const MPoly& f, const PointSet& u,
                                  u64 budget) {
  if (u.size() > budget)
    fail(ErrorCode::BudgetExceeded, "neighborhood too large to scan");
  for (const Point& cand : scan_order(u)) {
    if (cand.is_zero()) continue;
    if (is_shift_invariant(f, cand)) return cand;
  }
  return std::nullopt;
}

ESSCertificate certificate_from_direction(const Point& u) {
  ESSCertificate cert;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    const i64 b = balanced_mod(u.coords[i], u.p);
    if (b == 1)
      cert.s.push_back(i + 1);
    else if (b == -1)
      cert.t.push_back(i + 1);
    else if (b != 0)
      fail(ErrorCode::NotACertificate, "direction leaves the radius-1 ball");
  }
  if (cert.s.empty() || cert.t.empty())
    fail(ErrorCode::NotACertificate,
         "direction encodes an empty subset on one side");
  return cert;
}

Point direction_from_certificate(const ESSCertificate& cert, std::size_t n,
                                 const PrimeField& field) {
  if (cert.s.empty() || cert.t.empty())
    fail(ErrorCode::NotACertificate, "both subsets must be nonempty");
  Point u{std::vector<u64>(n, 0), field.p()};
  for (std::size_t i : cert.s) {
    if (i < 1 || i > n) fail(ErrorCode::NotACertificate, "index out of range");
    u.coords[i - 1] = 1;
  }
  for (std::size_t i : cert.t) {
    if (i < 1 || i > n) fail(ErrorCode::NotACertificate, "index out of range");
    if (u.coords[i - 1] != 0)
      fail(ErrorCode::NotACertificate, "subsets are not disjoint");
    u.coords[i - 1] = field.p() - 1;
  }
  return u;
}

ReductionOutcome solve_ess_via_reduction(const ESSInstance& inst, u64 seed) {
  auto [modular, field] = ess_to_mod_prime(inst, seed);
  ShiftFreenessInstance sfi = reduce_to_shiftfreeness(modular, field);

  ReductionOutcome outcome{field.p(), sfi.f, std::nullopt, std::nullopt};

  for (const Point& cand : scan_order(sfi.u1)) {
    if (cand.is_zero()) continue;
    if (!is_shift_invariant(sfi.f, cand)) continue;
    bool has_pos = false, has_neg = false;
    for (u64 c : cand.coords) {
      const i64 b = balanced_mod(c, field.p());
      has_pos = has_pos || b > 0;
      has_neg = has_neg || b < 0;
    }
    if (has_pos && has_neg) {
      outcome.direction = cand;
      outcome.certificate = certificate_from_direction(cand);
      return outcome;
    }
    // a one-signed invariant direction forces its support sum to vanish
    // modulo p, hence over the integers (the sum is below p); so every
    // supporting coefficient is zero
    u128 support_sum = 0;
    for (std::size_t i = 0; i < cand.dim(); ++i)
      if (cand.coords[i] != 0) support_sum += inst.a[i];
    if (support_sum != 0)
      throw std::logic_error("one-signed invariant direction with nonzero sum");
  }
  return outcome;
}

}  // namespace shiftvar
