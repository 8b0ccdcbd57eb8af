#include "shiftvar/shift_analysis.hpp"

#include <set>
#include <stdexcept>

namespace shiftvar {

bool ShiftKernel::contains(const std::vector<u64>& v) const {
  if (v.size() != n) fail(ErrorCode::DimensionMismatch, "vector length != n");
  // v lies in the span iff appending it does not raise the rank
  MatrixFp m(basis.size() + 1, n, p);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = basis[r][c];
  for (std::size_t c = 0; c < n; ++c) m.at(basis.size(), c) = v[c] % p;
  return rank(m) == basis.size();
}

ShiftKernel shift_kernel(const MPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "shift kernel of 0");
  if (*f.degree() >= f.p())
    fail(ErrorCode::DegreeNotBelowP, "degree must be below the characteristic");

  const std::size_t n = f.nvars();
  const u64 p = f.p();
  const std::vector<MPoly> parts = gradient(f);

  // rows: monomials of any partial, deduplicated, graded-lex
  std::set<Exponents, TermOrder> monomials;
  for (const auto& g : parts)
    for (const auto& [e, c] : g.terms()) monomials.insert(e);

  MatrixFp m(monomials.size(), n, p);
  std::size_t row = 0;
  for (const auto& e : monomials) {
    for (std::size_t i = 0; i < n; ++i) m.at(row, i) = parts[i].coeff(e);
    ++row;
  }
  return ShiftKernel{n, p, kernel_basis(m)};
}

bool is_shift_invariant(const MPoly& f, const Point& u) {
  if (u.p != f.p()) fail(ErrorCode::FieldMismatch, "shift in a different field");
  if (u.dim() != f.nvars())
    fail(ErrorCode::ArityMismatch, "shift vector has wrong dimension");
  return shift(f, u) == f;
}

namespace {

// f(C z) for the coordinate swap a <-> b (1-based); an involution.
MPoly swap_vars(const MPoly& f, std::size_t a, std::size_t b) {
  if (a == b) return f;
  MPoly r(f.nvars(), f.p());
  for (const auto& [e, c] : f.terms()) {
    Exponents e2 = e;
    std::swap(e2[a - 1], e2[b - 1]);
    r.add_term(e2, c);
  }
  return r;
}

MPoly drop_last_var(const MPoly& f) {
  const std::size_t n = f.nvars();
  MPoly r(n - 1, f.p());
  for (const auto& [e, c] : f.terms()) {
    if (e[n - 1] != 0)
      throw std::logic_error("reduced polynomial still uses the last variable");
    Exponents e2(e.begin(), e.end() - 1);
    r.add_term(e2, c);
  }
  return r;
}

}  // namespace

MPoly cylinder_reconstruct(const CylinderForm& form) {
  const std::size_t n = form.linear_map.rows();
  const u64 p = form.linear_map.p();
  if (form.reduced.nvars() == 0) {
    return MPoly::constant(n, p, static_cast<i64>(form.reduced.constant_term()));
  }
  std::vector<MPoly> args;
  for (std::size_t r = 0; r < form.reduced.nvars(); ++r) {
    MPoly lin(n, p);
    for (std::size_t c = 0; c < n; ++c) {
      if (form.linear_map.at(r, c) == 0) continue;
      Exponents e(n, 0);
      e[c] = 1;
      lin.add_term(e, form.linear_map.at(r, c));
    }
    args.push_back(std::move(lin));
  }
  return compose(form.reduced, args);
}

CylinderForm cylinder_normalize(const MPoly& f, const Point& u) {
  const std::size_t n = f.nvars();
  const u64 p = f.p();
  if (u.p != p) fail(ErrorCode::FieldMismatch, "shift in a different field");
  if (u.dim() != n)
    fail(ErrorCode::ArityMismatch, "shift vector has wrong dimension");
  if (u.is_zero()) fail(ErrorCode::ZeroShift, "direction must be nonzero");
  if (!f.is_zero() && *f.degree() >= p)
    fail(ErrorCode::DegreeNotBelowP, "degree must be below the characteristic");
  if (!is_shift_invariant(f, u))
    fail(ErrorCode::NotInvariantUnderU, "polynomial is not invariant under u");

  // largest index with nonzero coordinate; swap it to the last position
  std::size_t pivot = 0;
  for (std::size_t i = n; i >= 1; --i)
    if (u.coords[i - 1] != 0) {
      pivot = i;
      break;
    }
  const MPoly ftilde = swap_vars(f, pivot, n);
  std::vector<u64> w = u.coords;
  std::swap(w[pivot - 1], w[n - 1]);

  const u64 wn_inv = inv_mod(w[n - 1], p);
  MatrixFp lmap(n, n, p);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    lmap.at(i, i) = 1;
    lmap.at(i, n - 1) = neg_mod(mul_mod(w[i], wn_inv, p), p);
  }
  lmap.at(n - 1, n - 1) = wn_inv;
  // fold in the coordinate swap: columns pivot-1 and n-1 of lmap * C
  if (pivot != n) {
    for (std::size_t r = 0; r < n; ++r)
      std::swap(lmap.at(r, pivot - 1), lmap.at(r, n - 1));
  }

  // the base polynomial is the slice z_n = 0 of ftilde
  MPoly sliced(n, p);
  for (const auto& [e, c] : ftilde.terms())
    if (e[n - 1] == 0) sliced.add_term(e, c);
  CylinderForm form{lmap, drop_last_var(sliced), 1};

  if (!(cylinder_reconstruct(form) == f))
    throw std::logic_error("cylinder reconstruction mismatch");
  return form;
}

CylinderForm full_cylinder_reduction(const MPoly& f) {
  const std::size_t n = f.nvars();
  const u64 p = f.p();
  const ShiftKernel kernel = shift_kernel(f);  // validates f != 0, deg < p
  const std::size_t m = kernel.dim();

  MatrixFp composed = identity_matrix(n, p);
  MPoly reduced = f;
  for (std::size_t j = 0; j < m; ++j) {
    const std::vector<u64> image = mat_vec(composed, kernel.basis[j]);
    const std::size_t cur = n - j;  // variables of `reduced`
    Point w{std::vector<u64>(image.begin(), image.begin() + cur), p};
    if (w.is_zero())
      throw std::logic_error("kernel direction collapsed during reduction");
    CylinderForm step = cylinder_normalize(reduced, w);
    reduced = step.reduced;

    // composed <- (step map + identity on the already-eliminated block) * composed
    MatrixFp ext = identity_matrix(n, p);
    for (std::size_t r = 0; r < cur; ++r)
      for (std::size_t c = 0; c < cur; ++c)
        ext.at(r, c) = step.linear_map.at(r, c);
    composed = mat_mul(ext, composed);
  }

  // the images of the kernel basis must vanish on the base block and be
  // lower antitriangular with unit antidiagonal on the eliminated block
  for (std::size_t j = 0; j < m; ++j) {
    const std::vector<u64> image = mat_vec(composed, kernel.basis[j]);
    for (std::size_t r = 0; r < n - m; ++r)
      if (image[r] != 0)
        throw std::logic_error("kernel image leaks into the base block");
    for (std::size_t i = 0; i + j + 1 < m; ++i)
      if (image[n - m + i] != 0)
        throw std::logic_error("kernel images are not antitriangular");
    if (image[n - 1 - j] != 1)
      throw std::logic_error("kernel image antidiagonal is not 1");
  }

  if (!reduced.is_constant() && shift_kernel(reduced).dim() != 0)
    throw std::logic_error("reduced polynomial still has invariant directions");

  CylinderForm form{composed, reduced, m};
  if (!(cylinder_reconstruct(form) == f))
    throw std::logic_error("cylinder reconstruction mismatch");
  return form;
}

bool gradient_orthogonality_check(const MPoly& f, const Point& u,
                                  const std::vector<Point>& pts) {
  if (!is_shift_invariant(f, u))
    fail(ErrorCode::PreconditionViolated, "f is not invariant under u");
  for (const auto& a : pts)
    if (!f.evaluate(a).is_zero())
      fail(ErrorCode::PreconditionViolated, "point is not on the zero set");

  const std::vector<MPoly> grad = gradient(f);
  for (const auto& a : pts) {
    u64 dot = 0;
    for (std::size_t i = 0; i < f.nvars(); ++i)
      dot = add_mod(dot, mul_mod(grad[i].evaluate(a).v, u.coords[i], f.p()),
                    f.p());
    if (dot != 0) return false;
  }
  return true;
}

}  // namespace shiftvar
