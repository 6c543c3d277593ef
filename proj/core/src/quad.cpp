#include "rectinv/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>

#include "json.hpp"
#include "rectinv/error.hpp"

namespace rectinv {

void QuadratureSpec::validate() const {
  if (panel_order < 2) throw Error(ErrorCode::InvalidArgument, "panel_order must be >= 2");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rel_tol and abs_tol must be positive");
  }
  if (max_panels < 1) throw Error(ErrorCode::InvalidArgument, "max_panels must be >= 1");
  if (!(tail_growth > 1.0)) throw Error(ErrorCode::InvalidArgument, "tail_growth must be > 1");
}

std::string quad_to_json(const QuadratureSpec& q) {
  nlohmann::json j{{"panel_order", q.panel_order},
                   {"rel_tol", q.rel_tol},
                   {"abs_tol", q.abs_tol},
                   {"max_panels", q.max_panels},
                   {"tail_growth", q.tail_growth}};
  return j.dump();
}

QuadratureSpec quad_from_json(const std::string& text) {
  QuadratureSpec q;
  try {
    const auto j = nlohmann::json::parse(text);
    q.panel_order = j.value("panel_order", q.panel_order);
    q.rel_tol = j.value("rel_tol", q.rel_tol);
    q.abs_tol = j.value("abs_tol", q.abs_tol);
    q.max_panels = j.value("max_panels", q.max_panels);
    q.tail_growth = j.value("tail_growth", q.tail_growth);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad quadrature JSON: ") + e.what());
  }
  q.validate();
  return q;
}

namespace {

GaussRule make_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

cplx apply_rule(const Integrand& f, const GaussRule& rule, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  cplx sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const cplx v = f(mid + half * rule.nodes[i]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::NonFiniteIntegrand,
                  "integrand is not finite at t = " + std::to_string(mid + half * rule.nodes[i]));
    }
    sum += rule.weights[i] * v;
  }
  return half * sum;
}

struct Panel {
  double a;
  double b;
  cplx left;
  cplx right;
  double err;

  cplx value() const { return left + right; }
  bool operator<(const Panel& other) const { return err < other.err; }
};

Panel make_panel(const Integrand& f, const GaussRule& rule, double a, double b, cplx whole) {
  const double m = 0.5 * (a + b);
  const cplx l = apply_rule(f, rule, a, m);
  const cplx r = apply_rule(f, rule, m, b);
  return {a, b, l, r, std::abs(l + r - whole)};
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  thread_local std::map<int, GaussRule> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

Estimate integrate_finite(const Integrand& f, double a, double b, const QuadratureSpec& q) {
  q.validate();
  if (!(a <= b)) throw Error(ErrorCode::InvalidArgument, "integrate_finite needs a <= b");
  Estimate est;
  if (a == b) {
    est.panels_used = 1;
    return est;
  }
  const GaussRule& rule = gauss_legendre(q.panel_order);

  std::priority_queue<Panel> heap;
  heap.push(make_panel(f, rule, a, b, apply_rule(f, rule, a, b)));
  cplx total = heap.top().value();
  double err = heap.top().err;

  auto tolerance = [&] { return std::max(q.rel_tol * std::abs(total), q.abs_tol); };
  while (err > tolerance() && static_cast<int>(heap.size()) < q.max_panels) {
    Panel worst = heap.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(worst.a < m && m < worst.b)) break;  // interval exhausted at double resolution
    heap.pop();
    Panel lo = make_panel(f, rule, worst.a, m, worst.left);
    Panel hi = make_panel(f, rule, m, worst.b, worst.right);
    total += lo.value() + hi.value() - worst.value();
    err += lo.err + hi.err - worst.err;
    heap.push(lo);
    heap.push(hi);
  }

  // Re-sum from the leaves to shed the drift of the running updates.
  est.panels_used = static_cast<int>(heap.size());
  est.value = 0.0;
  est.err_est = 0.0;
  while (!heap.empty()) {
    est.value += heap.top().value();
    est.err_est += heap.top().err;
    heap.pop();
  }
  est.converged = est.err_est <= std::max(q.rel_tol * std::abs(est.value), q.abs_tol);
  return est;
}

Estimate integrate_halfline(const Integrand& f, double a, const QuadratureSpec& q) {
  q.validate();
  constexpr int kMaxOuterPanels = 128;
  Estimate est;
  est.panels_used = 0;

  double lo = a;
  double width = 1.0;
  double prev_density = -1.0;
  int growth_streak = 0;
  int small_streak = 0;
  bool stopped = false;

  for (int k = 0; k < kMaxOuterPanels; ++k) {
    const double hi = lo + width;
    if (!std::isfinite(hi)) break;
    const Estimate panel = integrate_finite(f, lo, hi, q);
    est += panel;

    const double magnitude = std::abs(panel.value);
    const double density = magnitude / width;
    if (prev_density >= 0.0 && density > prev_density) {
      if (++growth_streak >= 3) {
        throw Error(ErrorCode::TailDivergence,
                    "panel magnitudes grow past t = " + std::to_string(hi));
      }
    } else {
      growth_streak = 0;
    }
    prev_density = density;

    if (magnitude <= q.abs_tol && magnitude <= q.rel_tol * std::abs(est.value)) {
      if (++small_streak >= 2) {
        stopped = true;
        break;
      }
    } else {
      small_streak = 0;
    }
    lo = hi;
    width *= q.tail_growth;
  }

  est.converged = est.converged && stopped &&
                  est.err_est <= std::max(q.rel_tol * std::abs(est.value), q.abs_tol);
  return est;
}

Estimate integrate_unit_singular(const Integrand& g, cplx z, const QuadratureSpec& q) {
  return integrate_halfline(
      [&](double t) { return std::exp(-z * t) * g(std::exp(-t)); }, 0.0, q);
}

}  // namespace rectinv
