#ifndef SHIFTVAR_HARDNESS_HPP
#define SHIFTVAR_HARDNESS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "shiftvar/enumeration.hpp"
#include "shiftvar/shift_analysis.hpp"

namespace shiftvar {

// EQUAL SUBSET SUM instance: nonnegative integers a_1, ..., a_n.
struct ESSInstance {
  std::vector<u64> a;
};

// Two disjoint nonempty index sets (1-based) with equal sums.
struct ESSCertificate {
  std::vector<std::size_t> s;
  std::vector<std::size_t> t;

  friend bool operator==(const ESSCertificate& x, const ESSCertificate& y) {
    return x.s == y.s && x.t == y.t;
  }
};

// Target of the reduction: a linear form together with the radius-1 ball.
struct ShiftFreenessInstance {
  MPoly f;       // sum of a_i x_i over F_p
  PointSet u1;   // {-1, 0, 1}^n
};

// Exhaustive scan of all 3^n assignments (out / S / T per index) in a fixed
// counter order; returns the first certificate or nothing.  Requires n <= 20.
std::optional<ESSCertificate> ess_brute(const ESSInstance& inst);

// Lifts the instance to arithmetic modulo a deterministically certified
// prime p > sum(a_i).  seed = 0 starts the search at sum + 1; any other seed
// draws a random start offset, the Las Vegas flavor.  Answers transfer in
// both directions because |b_S - b_T| <= sum < p.
std::pair<ESSInstance, PrimeField> ess_to_mod_prime(const ESSInstance& inst,
                                                    u64 seed = 0);

// The linear form sum(a_i x_i) with the radius-1 ball: it admits a nonzero
// invariant direction in U_1 with both signs present iff the modular
// instance has a certificate.
ShiftFreenessInstance reduce_to_shiftfreeness(const ESSInstance& inst,
                                              const PrimeField& field);

// Candidate order for direction scans: by the sum of absolute balanced
// coordinates, then lexicographic with positives before negatives.
std::vector<Point> scan_order(const PointSet& u);

// First nonzero u in scan order with f(x - u) = f(x), checked by computing
// the shifted polynomial and comparing representations.
std::optional<Point> shift_search(const MPoly& f, const PointSet& u,
                                  u64 budget = kDefaultBudget);

// u <-> (S, T) with u_i = 1 for i in S and u_i = -1 for i in T.  Directions
// outside {-1,0,1}^n, the zero direction, and one-signed directions are
// rejected (the latter encode an empty S or T).
ESSCertificate certificate_from_direction(const Point& u);
Point direction_from_certificate(const ESSCertificate& cert, std::size_t n,
                                 const PrimeField& field);

// The full pipeline.  One-signed invariant directions are skipped; when the
// preconditions hold their support sums to zero over the integers, which is
// asserted.
struct ReductionOutcome {
  u64 p;
  MPoly f;
  std::optional<Point> direction;
  std::optional<ESSCertificate> certificate;
};
ReductionOutcome solve_ess_via_reduction(const ESSInstance& inst,
                                         u64 seed = 0);

}  // namespace shiftvar

#endif  // SHIFTVAR_HARDNESS_HPP
