#pragma once

// Adaptive Gauss-Legendre quadrature on finite intervals, half-lines and the
// unit interval with an integrable singularity at 0.

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace rectinv {

using cplx = std::complex<double>;
using Integrand = std::function<cplx(double)>;

struct QuadratureSpec {
  int panel_order = 16;
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_panels = 4096;
  double tail_growth = 2.0;

  // Throws Error(InvalidArgument) on a field outside its admissible range.
  void validate() const;

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

std::string quad_to_json(const QuadratureSpec& q);
// Missing keys keep their defaults.
QuadratureSpec quad_from_json(const std::string& text);

struct Estimate {
  cplx value{};
  double err_est = 0.0;
  int panels_used = 0;
  bool converged = true;

  Estimate& operator+=(const Estimate& other) {
    value += other.value;
    err_est += other.err_est;
    panels_used += other.panels_used;
    converged = converged && other.converged;
    return *this;
  }
};

// Nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per thread; the reference stays valid for the thread's lifetime.
const GaussRule& gauss_legendre(int order);

// Global adaptive bisection. Each panel's error is the gap between its
// one-panel rule and the sum over its two halves; the panel with the largest
// gap is split until the summed gap meets max(rel_tol |value|, abs_tol) or
// max_panels leaves are in use.
Estimate integrate_finite(const Integrand& f, double a, double b, const QuadratureSpec& q = {});

// Sum of panels [a, a+1], [a+1, a+1+g], ... with geometric widths. Stops once
// two consecutive panels fall below both abs_tol and rel_tol |accumulated|.
// Throws TailDivergence when the mean panel magnitude |panel| / width grows
// over three consecutive panels.
Estimate integrate_halfline(const Integrand& f, double a, const QuadratureSpec& q = {});

// int_0^1 x^{z-1} g(x) dx, evaluated as int_0^inf e^{-z t} g(e^{-t}) dt.
Estimate integrate_unit_singular(const Integrand& g, cplx z, const QuadratureSpec& q = {});

}  // namespace rectinv
