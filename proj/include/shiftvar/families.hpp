#ifndef SHIFTVAR_FAMILIES_HPP
#define SHIFTVAR_FAMILIES_HPP

#include <map>
#include <optional>
#include <string>

#include "shiftvar/enumeration.hpp"

namespace shiftvar {

enum class FamilyKind {
  ParallelHyperplanes,
  Graph,
  Determinantal,
  Discriminant,
  Resultant,
  DecomposableSample,
  EssLinearForm,
};

std::string family_kind_name(FamilyKind kind);

// A constructed example instance together with its certified geometric
// metadata and any closed-form count predictions that do not depend on the
// neighborhood radius.
struct FamilySpec {
  FamilyKind kind;
  std::map<std::string, u64> parameters;
  VarietyInstance instance;
  std::map<std::string, u64> predictions;
  bool shift_free = false;  // certified property of the family
};

// Union of d parallel hyperplanes x1 = 0, 1, ..., d-1.  Not shift-free;
// the deficiency has an exact closed form (see hyperplane_prediction).
FamilySpec parallel_hyperplanes(u64 d, std::size_t n, const PrimeField& field);

// Exact counts for the hyperplane family at radius h; valid iff p > d + 2h.
struct HyperplanePrediction {
  u64 count_x = 0;
  u64 count_sumset = 0;
  u64 delta = 0;
  bool valid = false;
};
HyperplanePrediction hyperplane_prediction(u64 d, std::size_t n, u64 p, u64 h);

// Graph hypersurface x_n = g(x_1, ..., x_{n-1}) for deg g >= 2; has exactly
// p^{n-1} rational points and no invariant direction.
FamilySpec graph_variety(const MPoly& g);

// Matrices of rank at most s inside the rows x cols matrix space, cut out by
// all (s+1)-minors of the generic matrix.
FamilySpec determinantal_minors(std::size_t rows, std::size_t cols,
                                std::size_t s, const PrimeField& field);

// Hypersurface of degree-at-most-n univariate polynomials that are not
// squarefree, cut out by the resultant of the generic polynomial and its
// derivative (not divided by the leading coefficient, hence degree 2n-1).
FamilySpec generic_discriminant(u64 n, const PrimeField& field);

// Hypersurface of non-coprime pairs, cut out by the expanded Sylvester
// determinant of the generic pair; degree n + m.
FamilySpec generic_resultant(u64 n, u64 m, const PrimeField& field);

// Coefficient vectors of `count` random compositions g(h) with deg g = ell,
// deg h = m and h monic original; points of the decomposable-polynomial
// variety in A^{ell*m + 1}.  Sampling only.
PointSet decomposable_sample(u64 ell, u64 m, const PrimeField& field,
                             u64 count, u64 seed = 1);

// Hyperplane sum(a_i x_i) = 0; the instance behind the subset-sum reduction.
FamilySpec ess_linear_form(const std::vector<u64>& a, const PrimeField& field);

// Determinant of a square polynomial matrix by fraction-free elimination
// (Bareiss); every intermediate division is exact in F_p[x_1..x_n].
MPoly poly_determinant(std::vector<std::vector<MPoly>> m);

// Exact division f / g; throws std::logic_error if the division is inexact.
MPoly mpoly_exact_div(const MPoly& f, const MPoly& g);

// Sylvester matrix of two generic univariate polynomials presented by their
// coefficient polynomials, highest degree first.
std::vector<std::vector<MPoly>> sylvester_matrix(
    const std::vector<MPoly>& f_coeffs, const std::vector<MPoly>& g_coeffs);

}  // namespace shiftvar

#endif  // SHIFTVAR_FAMILIES_HPP
