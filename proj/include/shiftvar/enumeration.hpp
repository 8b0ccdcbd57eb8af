#ifndef SHIFTVAR_ENUMERATION_HPP
#define SHIFTVAR_ENUMERATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "shiftvar/multipoly.hpp"

namespace shiftvar {

// Default cap on exhaustively scanned candidate points.
inline constexpr u64 kDefaultBudget = 100'000'000;

// Declared geometric data for a variety: dimension r, degree d, number of
// essential components sigma, and the sum bigD of their degrees.  Supplied
// by family constructors or input files, never inferred.
struct VarietyMetadata {
  u64 r = 0;
  u64 d = 1;
  u64 sigma = 0;
  u64 bigD = 0;
};

struct VarietyInstance {
  u64 p = 0;
  std::size_t n = 0;
  std::vector<MPoly> polys;
  VarietyMetadata metadata;
};

// Throws MetadataMissing / DimensionMismatch on inconsistent instances.
void validate_instance(const VarietyInstance& v);

// Deduplicated subset of F_p^n.  Points are stored as canonical coordinate
// rows in lexicographic order, which fixes the iteration order and gives
// log-time membership; no positional encoding, so arbitrarily large p and n
// are fine as long as the set itself is small.
class PointSet {
 public:
  PointSet(std::size_t n, u64 p) : n_(n), p_(p) {}

  // rows must already be lexicographically sorted and unique
  static PointSet from_sorted_rows(std::size_t n, u64 p,
                                   std::vector<u64> flat_rows);

  std::size_t n() const { return n_; }
  u64 p() const { return p_; }
  u64 size() const { return n_ == 0 ? 0 : flat_.size() / n_; }

  std::span<const u64> coords_at(std::size_t index) const {
    return {flat_.data() + index * n_, n_};
  }
  Point point_at(std::size_t index) const {
    const auto row = coords_at(index);
    return Point{{row.begin(), row.end()}, p_};
  }

  bool contains(std::span<const u64> coords) const;

  // append a row; call finalize() before queries
  void insert_coords(std::span<const u64> coords);
  void finalize();  // sort rows + dedupe

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.flat_ == b.flat_;
  }

 private:
  std::size_t n_;
  u64 p_;
  std::vector<u64> flat_;  // row-major
};

// Exhaustive scan of F_p^n for the common zeros of the instance.  Requires
// p^n <= budget (BudgetExceeded otherwise).
PointSet rational_points(const VarietyInstance& v, u64 budget = kDefaultBudget);

// {a : max_i |balanced(a_i)| <= h}, of size (2h+1)^n.  h = 0 gives {0};
// h >= 1 requires 2h < p.
PointSet ball(u64 h, std::size_t n, const PrimeField& field,
              u64 budget = kDefaultBudget);

// {u - v : u, v in U}
PointSet difference_set(const PointSet& u);

// {a + u : a in X, u in U}
PointSet sumset(const PointSet& x, const PointSet& u,
                u64 budget = kDefaultBudget);

// cardinality of the sumset without materializing it
u64 sumset_size(const PointSet& x, const PointSet& u,
                u64 budget = kDefaultBudget);

struct BoundCheck {
  std::string name;
  long double lhs = 0;
  long double rhs = 0;
  bool holds = false;
  bool applicable = false;
};

struct NeighborhoodReport {
  u64 count_x = 0;
  u64 count_u = 0;
  u64 count_sumset = 0;
  u64 delta = 0;
  std::vector<BoundCheck> bounds;
};

// counts and delta = #X * #U - #(X + U), always >= 0
NeighborhoodReport compute_delta(const PointSet& x, const PointSet& u,
                                 u64 budget = kDefaultBudget);

// true iff zeroing any single coordinate of any member stays inside U
bool closed_under_shifts_to_zero(const PointSet& u);

// sum over ordered pairs a != b in X of #((a+U) cap (b+U)); sits between
// delta and the shifted-overlap bound, and both inequalities are asserted.
u64 pair_overlap_sum(const PointSet& x, const PointSet& u,
                     u64 budget = kDefaultBudget);

// #U * sum over nonzero w in U-U of #(X cap (X + w))
u64 shifted_overlap_bound(const PointSet& x, const PointSet& u);

// If U is exactly a standard ball, its radius.
std::optional<u64> standard_ball_radius(const PointSet& u);

// Evaluates every applicable inequality for the instance at this
// neighborhood.  Exact integer arithmetic throughout except for the
// fractional-exponent terms, which are evaluated in double precision with
// the upper side rounded up by a relative 1e-9 guard.
NeighborhoodReport bound_report(const VarietyInstance& v, const PointSet& u,
                                bool shift_free, u64 budget = kDefaultBudget);

// Desk-scale check whether the variety of the system is invariant under u:
// rational-point-set equality, plus the sufficient per-generator polynomial
// test.  Point-set equality alone is heuristic for s > 1.
struct SystemShiftInvariance {
  bool point_sets_equal = false;
  bool per_generator = false;
  bool heuristic = false;  // set when only the point-set evidence is positive
};
SystemShiftInvariance system_shift_invariant(const VarietyInstance& v,
                                             const Point& u,
                                             u64 budget = kDefaultBudget);

}  // namespace shiftvar

#endif  // SHIFTVAR_ENUMERATION_HPP
