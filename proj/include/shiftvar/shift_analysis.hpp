#ifndef SHIFTVAR_SHIFT_ANALYSIS_HPP
#define SHIFTVAR_SHIFT_ANALYSIS_HPP

#include <vector>

#include "shiftvar/multipoly.hpp"

namespace shiftvar {

// Basis of the subspace of directions u with f(x - u) = f(x).  For p above
// the degree, a polynomial is invariant under u exactly when u annihilates
// its gradient as a polynomial identity, so the space is the null space of
// the coefficient matrix of the first partials.
struct ShiftKernel {
  std::size_t n = 0;
  u64 p = 0;
  std::vector<std::vector<u64>> basis;  // echelon, deterministic order

  std::size_t dim() const { return basis.size(); }
  bool contains(const std::vector<u64>& v) const;
};

// Requires f != 0 and deg f < p; both are hard errors, since the gradient
// criterion breaks down at degree >= p.
ShiftKernel shift_kernel(const MPoly& f);

// Direct test: shift f by u and compare canonical forms.  Deliberately
// independent of shift_kernel, which it cross-checks.
bool is_shift_invariant(const MPoly& f, const Point& u);

// Invariant polynomial rewritten over a cylinder base: f equals the reduced
// polynomial composed with the first n-m rows of linear_map, and the reduced
// polynomial admits no invariant direction of its own (unless constant).
struct CylinderForm {
  MatrixFp linear_map;  // n x n, invertible
  MPoly reduced;        // in n - m variables
  std::size_t m = 0;
};

// f composed back through the first (n - m) rows of the linear map; equals
// the original polynomial for every form this module produces.
MPoly cylinder_reconstruct(const CylinderForm& form);

// One elimination step in direction u.  Picks the largest index i with
// u_i != 0, swaps that coordinate with the last one, and applies the linear
// forms (x_1 - w_1 x_n / w_n, ..., x_{n-1} - w_{n-1} x_n / w_n, x_n / w_n).
// The result is independent of the last variable and is returned in n-1
// variables with m = 1.
CylinderForm cylinder_normalize(const MPoly& f, const Point& u);

// Eliminates every invariant direction: m = dim shift_kernel(f) steps, each
// peeling one direction; asserts the antitriangular shape of the images of
// the kernel basis under the composed map and the triviality of the reduced
// polynomial's kernel.
CylinderForm full_cylinder_reduction(const MPoly& f);

// Oracle for the necessary condition (grad f)(a) . u = 0 at points of the
// zero set; preconditions (invariance, membership) are enforced.
bool gradient_orthogonality_check(const MPoly& f, const Point& u,
                                  const std::vector<Point>& pts);

}  // namespace shiftvar

#endif  // SHIFTVAR_SHIFT_ANALYSIS_HPP
