#include "rectinv/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "rectinv/error.hpp"

namespace rectinv {

namespace {

void require_rational(const TransformExpr& t) {
  if (t.form() != TransformExpr::Form::Rational) {
    throw Error(ErrorCode::InvalidArgument, "residue calculus needs a rational transform");
  }
}

}  // namespace

ResidueSum ResidueSum::of(const TransformExpr& t, InverseKind kind) {
  require_rational(t);
  ResidueSum sum;
  for (const Pole& p : t.poles()) sum.terms.push_back({p.location, p.residue, kind});
  return sum;
}

cplx ResidueSum::evaluate(double arg) const {
  cplx total{};
  for (const auto& term : terms) {
    if (term.kernel == InverseKind::MellinKernel && !(arg > 0.0)) {
      throw Error(ErrorCode::DomainError, "Mellin kernel y^{-z} needs y > 0");
    }
    total += term.residue * kernel(term.kernel, term.pole, arg);
  }
  return total;
}

cplx residue_inverse_complex(const TransformExpr& t, InverseKind kind, double arg) {
  return ResidueSum::of(t, kind).evaluate(arg);
}

double residue_inverse(const TransformExpr& t, InverseKind kind, double arg) {
  const ResidueSum sum = ResidueSum::of(t, kind);
  const cplx value = sum.evaluate(arg);
  if (conjugate_symmetric(t)) {
    double scale = 0.0;
    for (const auto& term : sum.terms) {
      scale += std::abs(term.residue * kernel(kind, term.pole, arg));
    }
    if (std::abs(value.imag()) > 1e-12 * std::max(scale, 1e-300)) {
      throw Error(ErrorCode::InvalidArgument, "residue sum of a conjugate-symmetric transform is not real");
    }
  }
  return value.real();
}

PoleBox pole_box(const TransformExpr& t) {
  require_rational(t);
  PoleBox box{kInf, -kInf, 0.0};
  for (const Pole& p : t.poles()) {
    box.re_min = std::min(box.re_min, p.location.real());
    box.re_max = std::max(box.re_max, p.location.real());
    box.im_max = std::max(box.im_max, std::abs(p.location.imag()));
  }
  return box;
}

bool conjugate_symmetric(const TransformExpr& t, double tol) {
  if (t.form() != TransformExpr::Form::Rational) return false;
  const auto poles = t.poles();
  return std::all_of(poles.begin(), poles.end(), [&](const Pole& p) {
    return std::any_of(poles.begin(), poles.end(), [&](const Pole& q) {
      return std::abs(q.location - std::conj(p.location)) <= tol &&
             std::abs(q.residue - std::conj(p.residue)) <= tol * std::max(1.0, std::abs(p.residue));
    });
  });
}

}  // namespace rectinv
