#pragma once

// Residue calculus for rational transforms: the closed-form ground truth
// that every contour quadrature is checked against.

#include <vector>

#include "rectinv/kernel.hpp"
#include "rectinv/xform.hpp"

namespace rectinv {

struct ResidueTerm {
  cplx pole;
  cplx residue;
  InverseKind kernel;
};

// One term per pole of the rational transform, in pole order.
struct ResidueSum {
  std::vector<ResidueTerm> terms;

  static ResidueSum of(const TransformExpr& t, InverseKind kind);
  // sum_k r_k K(p_k, arg): r e^{p x} (Laplace) or r y^{-p} (Mellin).
  cplx evaluate(double arg) const;
};

// Real part of the residue sum. Throws DomainError for a Mellin kernel with
// arg <= 0, InvalidArgument for a non-rational transform, and
// InvalidArgument if a conjugate-symmetric pole set leaves an imaginary part
// above 1e-12 of the sum's scale.
double residue_inverse(const TransformExpr& t, InverseKind kind, double arg);

// Complex residue sum, no realness check.
cplx residue_inverse_complex(const TransformExpr& t, InverseKind kind, double arg);

struct PoleBox {
  double re_min;
  double re_max;
  double im_max;  // max |Im p|

  friend bool operator==(const PoleBox&, const PoleBox&) = default;
};

PoleBox pole_box(const TransformExpr& t);

// True when every pole's conjugate is present with the conjugate residue.
bool conjugate_symmetric(const TransformExpr& t, double tol = 1e-12);

}  // namespace rectinv
