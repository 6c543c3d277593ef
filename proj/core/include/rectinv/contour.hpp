#pragma once

// Integration paths for inverse transforms and their numerical evaluation.
//
// A BromwichLine is the open segment [c - iT, c + iT] traversed upward. A
// Rectangle is closed and counterclockwise: right edge up, top edge left,
// left edge down, bottom edge right. With all poles of a rational transform
// inside, the closed sum is exact up to quadrature error for any T and delta.

#include <string>
#include <vector>

#include "rectinv/kernel.hpp"
#include "rectinv/xform.hpp"

namespace rectinv {

enum class ContourShape { BromwichLine, Rectangle };

class Contour {
 public:
  static Contour bromwich(double c, double half_height, double delta);
  static Contour rectangle(double c_left, double c_right, double half_height, double delta);

  ContourShape shape() const noexcept { return shape_; }
  double c_right() const noexcept { return c_right_; }
  // Only meaningful for rectangles; equals c_right on a line.
  double c_left() const noexcept { return c_left_; }
  double half_height() const noexcept { return half_height_; }
  double delta() const noexcept { return delta_; }

  bool encloses(cplx z) const noexcept;

  friend bool operator==(const Contour&, const Contour&) = default;

 private:
  Contour(ContourShape shape, double c_left, double c_right, double half_height, double delta);

  ContourShape shape_;
  double c_left_;
  double c_right_;
  double half_height_;
  double delta_;
};

std::string contour_to_json(const Contour& c);
Contour contour_from_json(const std::string& text);

inline constexpr double kDefaultDelta = 0.5;

// Pole box height plus max(delta, 1).
double default_half_height(const TransformExpr& t, double delta);

// Vertical line at a + delta, a being the rightmost pole (rational), 0 (Gamma)
// or the lower border of the validity region (numeric).
Contour bromwich_for(const TransformExpr& t, double delta, double half_height);

// Rectangle [re_min - delta, re_max + delta] x [-iT, iT] with
// T >= max |Im p| + delta. Rational transforms only.
Contour rectangle_for(const TransformExpr& t, double delta, double half_height);

struct ContourNode {
  cplx z;
  cplx weight;
};

// Composite Gauss-Legendre along the oriented path, sum w g(z) ~ int g dz.
// Panels are at most min(pi/4, delta) long so an edge a distance delta from
// a pole stays well resolved.
std::vector<ContourNode> discretize(const Contour& c, const QuadratureSpec& q = {});

// (1/2 pi i) sum w K(z, arg) t(z).
cplx inverse_eval(const TransformExpr& t, InverseKind kind, const Contour& c, double arg,
                  const QuadratureSpec& q = {});

// Transform values at the nodes of a contour. Sampling once and reusing the
// values across arguments saves the dominant cost for numeric transforms.
struct SampledContour {
  std::vector<ContourNode> nodes;
  std::vector<cplx> values;
};

SampledContour sample_contour(const TransformExpr& t, const Contour& c, const QuadratureSpec& q = {});
cplx inverse_eval(const SampledContour& sampled, InverseKind kind, double arg);

enum class LineSide { RightOfPoles, LeftOfPoles };

// Raw upward line integral (1/2 pi i) int K t dz; a left line that closes
// clockwise around the poles therefore carries a minus sign.
cplx single_line_eval(const TransformExpr& t, InverseKind kind, const Contour& line, LineSide side,
                      double arg, const QuadratureSpec& q = {});

// Right line minus left line: the two-line form of the extended inverse.
struct TwoLineResult {
  cplx right;
  cplx left;
  cplx combined;
};
TwoLineResult two_line_eval(const TransformExpr& t, InverseKind kind, const Contour& rect,
                            double arg, const QuadratureSpec& q = {});

// (1/2 pi i) closed-integral of t(w) / (z - w) over rect; reproduces t(z) for
// Re z > rect.c_right().
cplx cauchy_reproduction(const TransformExpr& t, const Contour& rect, cplx z,
                         const QuadratureSpec& q = {});

}  // namespace rectinv
