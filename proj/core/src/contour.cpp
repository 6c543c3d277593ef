#include "rectinv/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "format.hpp"
#include "json.hpp"
#include "rectinv/error.hpp"
#include "rectinv/oracle.hpp"

namespace rectinv {

namespace {

constexpr double kMaxPanel = std::numbers::pi / 4.0;
const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

void append_segment(std::vector<ContourNode>& out, cplx from, cplx to, double max_panel,
                    const GaussRule& rule) {
  const double length = std::abs(to - from);
  if (length == 0.0) return;
  const int panels = std::max(1, static_cast<int>(std::ceil(length / max_panel)));
  const cplx step = (to - from) / static_cast<double>(panels);
  for (int k = 0; k < panels; ++k) {
    const cplx mid = from + (k + 0.5) * step;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      out.push_back({mid + 0.5 * rule.nodes[i] * step, 0.5 * rule.weights[i] * step});
    }
  }
}

cplx contour_sum(const std::vector<ContourNode>& nodes, const auto& g) {
  cplx sum{};
  for (const auto& n : nodes) sum += n.weight * g(n.z);
  return sum;
}

void require_mellin_arg(InverseKind kind, double arg) {
  if (kind == InverseKind::MellinKernel && !(arg > 0.0)) {
    throw Error(ErrorCode::DomainError, "Mellin kernel y^{-z} needs y > 0");
  }
}

}  // namespace

std::string_view inverse_kind_name(InverseKind kind) noexcept {
  return kind == InverseKind::LaplaceKernel ? "laplace" : "mellin";
}

InverseKind inverse_kind_from_name(std::string_view name) {
  if (name == "laplace") return InverseKind::LaplaceKernel;
  if (name == "mellin" || name == "moment") return InverseKind::MellinKernel;
  throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + std::string(name) + "'");
}

Contour::Contour(ContourShape shape, double c_left, double c_right, double half_height,
                 double delta)
    : shape_(shape), c_left_(c_left), c_right_(c_right), half_height_(half_height), delta_(delta) {
  if (!std::isfinite(c_left) || !std::isfinite(c_right) || !std::isfinite(half_height) ||
      !std::isfinite(delta)) {
    throw Error(ErrorCode::InvalidArgument, "contour geometry must be finite");
  }
  if (!(half_height > 0.0) || !(delta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "contour needs half_height > 0 and delta > 0");
  }
  if (shape == ContourShape::Rectangle && !(c_left < c_right)) {
    throw Error(ErrorCode::InvalidArgument, "rectangle needs c_left < c_right");
  }
}

Contour Contour::bromwich(double c, double half_height, double delta) {
  return {ContourShape::BromwichLine, c, c, half_height, delta};
}

Contour Contour::rectangle(double c_left, double c_right, double half_height, double delta) {
  return {ContourShape::Rectangle, c_left, c_right, half_height, delta};
}

bool Contour::encloses(cplx z) const noexcept {
  return shape_ == ContourShape::Rectangle && c_left_ < z.real() && z.real() < c_right_ &&
         std::abs(z.imag()) < half_height_;
}

std::string contour_to_json(const Contour& c) {
  nlohmann::json j;
  j["shape"] = c.shape() == ContourShape::Rectangle ? "rectangle" : "bromwich";
  j["c_right"] = c.c_right();
  if (c.shape() == ContourShape::Rectangle) j["c_left"] = c.c_left();
  j["half_height"] = c.half_height();
  j["delta"] = c.delta();
  return j.dump();
}

Contour contour_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto shape = j.at("shape").get<std::string>();
    const double c_right = j.at("c_right").get<double>();
    const double half_height = j.at("half_height").get<double>();
    const double delta = j.at("delta").get<double>();
    if (shape == "rectangle") {
      return Contour::rectangle(j.at("c_left").get<double>(), c_right, half_height, delta);
    }
    if (shape == "bromwich") return Contour::bromwich(c_right, half_height, delta);
    throw Error(ErrorCode::InvalidArgument, "unknown contour shape '" + shape + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad contour JSON: ") + e.what());
  }
}

double default_half_height(const TransformExpr& t, double delta) {
  const double box = t.form() == TransformExpr::Form::Rational ? pole_box(t).im_max : 0.0;
  return box + std::max(delta, 1.0);
}

Contour bromwich_for(const TransformExpr& t, double delta, double half_height) {
  double boundary = 0.0;
  switch (t.form()) {
    case TransformExpr::Form::Rational: boundary = pole_box(t).re_max; break;
    case TransformExpr::Form::GammaFn: boundary = 0.0; break;
    case TransformExpr::Form::Numeric:
      boundary = t.validity().c1;
      if (!std::isfinite(boundary) || !(boundary + delta < t.validity().c2)) {
        throw Error(ErrorCode::UnknownBoundary, "no admissible line abscissa for this transform");
      }
      break;
  }
  return Contour::bromwich(boundary + delta, half_height, delta);
}

Contour rectangle_for(const TransformExpr& t, double delta, double half_height) {
  if (t.form() != TransformExpr::Form::Rational) {
    throw Error(ErrorCode::NotRectangularizable,
                "only rational transforms have a finite pole set to enclose");
  }
  const PoleBox box = pole_box(t);
  return Contour::rectangle(box.re_min - delta, box.re_max + delta,
                            std::max(half_height, box.im_max + delta), delta);
}

std::vector<ContourNode> discretize(const Contour& c, const QuadratureSpec& q) {
  q.validate();
  const GaussRule& rule = gauss_legendre(q.panel_order);
  const double max_panel = std::min(kMaxPanel, c.delta());
  const double t = c.half_height();
  std::vector<ContourNode> nodes;
  if (c.shape() == ContourShape::BromwichLine) {
    append_segment(nodes, {c.c_right(), -t}, {c.c_right(), t}, max_panel, rule);
    return nodes;
  }
  const cplx br(c.c_right(), -t);
  const cplx tr(c.c_right(), t);
  const cplx tl(c.c_left(), t);
  const cplx bl(c.c_left(), -t);
  append_segment(nodes, br, tr, max_panel, rule);
  append_segment(nodes, tr, tl, max_panel, rule);
  append_segment(nodes, tl, bl, max_panel, rule);
  append_segment(nodes, bl, br, max_panel, rule);
  return nodes;
}

cplx inverse_eval(const TransformExpr& t, InverseKind kind, const Contour& c, double arg,
                  const QuadratureSpec& q) {
  require_mellin_arg(kind, arg);
  const auto nodes = discretize(c, q);
  return contour_sum(nodes, [&](cplx z) { return kernel(kind, z, arg) * eval_transform(t, z, q); }) /
         kTwoPiI;
}

SampledContour sample_contour(const TransformExpr& t, const Contour& c, const QuadratureSpec& q) {
  SampledContour s;
  s.nodes = discretize(c, q);
  s.values.reserve(s.nodes.size());
  for (const auto& n : s.nodes) s.values.push_back(eval_transform(t, n.z, q));
  return s;
}

cplx inverse_eval(const SampledContour& sampled, InverseKind kind, double arg) {
  require_mellin_arg(kind, arg);
  cplx sum{};
  for (std::size_t i = 0; i < sampled.nodes.size(); ++i) {
    sum += sampled.nodes[i].weight * kernel(kind, sampled.nodes[i].z, arg) * sampled.values[i];
  }
  return sum / kTwoPiI;
}

cplx single_line_eval(const TransformExpr& t, InverseKind kind, const Contour& line, LineSide side,
                      double arg, const QuadratureSpec& q) {
  if (line.shape() != ContourShape::BromwichLine) {
    throw Error(ErrorCode::InvalidArgument, "single_line_eval needs a vertical line");
  }
  if (t.form() != TransformExpr::Form::Rational) {
    throw Error(ErrorCode::InvalidArgument, "single_line_eval needs a rational transform");
  }
  const PoleBox box = pole_box(t);
  const bool ok = side == LineSide::RightOfPoles ? box.re_max < line.c_right()
                                                 : line.c_right() < box.re_min;
  if (!ok) {
    throw Error(ErrorCode::SidePoleConflict,
                "a pole lies on the wrong side of Re z = " + detail::shortest(line.c_right()));
  }
  return inverse_eval(t, kind, line, arg, q);
}

TwoLineResult two_line_eval(const TransformExpr& t, InverseKind kind, const Contour& rect,
                            double arg, const QuadratureSpec& q) {
  if (rect.shape() != ContourShape::Rectangle) {
    throw Error(ErrorCode::InvalidArgument, "two_line_eval needs a rectangle");
  }
  const auto right = Contour::bromwich(rect.c_right(), rect.half_height(), rect.delta());
  const auto left = Contour::bromwich(rect.c_left(), rect.half_height(), rect.delta());
  TwoLineResult r;
  r.right = single_line_eval(t, kind, right, LineSide::RightOfPoles, arg, q);
  r.left = single_line_eval(t, kind, left, LineSide::LeftOfPoles, arg, q);
  r.combined = r.right - r.left;
  return r;
}

cplx cauchy_reproduction(const TransformExpr& t, const Contour& rect, cplx z,
                         const QuadratureSpec& q) {
  if (rect.shape() != ContourShape::Rectangle) {
    throw Error(ErrorCode::InvalidArgument, "cauchy_reproduction needs a rectangle");
  }
  if (!(z.real() > rect.c_right())) {
    throw Error(ErrorCode::ZInsideRectangle, "z = " + detail::complex_literal(z) +
                                                 " must lie right of Re z = " +
                                                 detail::shortest(rect.c_right()));
  }
  const auto nodes = discretize(rect, q);
  return contour_sum(nodes, [&](cplx w) { return eval_transform(t, w, q) / (z - w); }) / kTwoPiI;
}

}  // namespace rectinv
