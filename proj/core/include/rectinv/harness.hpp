#pragma once

// Verification campaigns over the transform engine plus the text formats
// the CLI speaks (spec strings, complex literals, grids, CSV).

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rectinv/contour.hpp"
#include "rectinv/funcat.hpp"
#include "rectinv/xform.hpp"

namespace rectinv {

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

// exp:gamma=<r> | power:gamma=<r> | mixedexp:g1=<r>,g2=<r> |
// mixedpower:g1=<r>,g2=<r> | expminusx. Whitespace is ignored.
FunctionSpec parse_spec_string(std::string_view text);

// "a", "a+bi", "a-bi" (no spaces).
cplx parse_complex(std::string_view text);

// "start:stop:count", inclusive and evenly spaced.
std::vector<double> parse_grid(std::string_view text);

// Comma-separated reals.
std::vector<double> parse_real_list(std::string_view text);

// [[re, im, res_re, res_im], ...]
TransformExpr parse_pole_list(std::string_view text);

// ---------------------------------------------------------------------------
// Round trips
// ---------------------------------------------------------------------------

inline constexpr double kRectangleTolerance = 1e-6;
inline constexpr double kLineTolerance = 5e-2;
inline constexpr double kDefaultLineHalfHeight = 200.0;

struct RoundTripRow {
  double arg;
  double truth;
  double recovered;
  double abs_err;
  double rel_err;  // abs_err / |truth|, or abs_err when truth == 0
};

struct RoundTripReport {
  FunctionSpec spec;
  InverseKind kind;
  Contour contour;
  std::vector<RoundTripRow> rows;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::chrono::duration<double> wall_time{};
};

struct RoundTripOptions {
  bool use_rectangle = true;
  double delta = kDefaultDelta;
  // Unset: pole box + max(delta, 1) for rectangles, kDefaultLineHalfHeight for lines.
  std::optional<double> half_height;
  // Unset: kRectangleTolerance or kLineTolerance by path.
  std::optional<double> tolerance;
};

// The transform the kernel inverts for spec: Laplace for LaplaceKernel;
// the moment for power-family specs and the Mellin transform otherwise under
// MellinKernel. Closed form when cataloged, numeric otherwise.
TransformExpr transform_for(const FunctionSpec& spec, InverseKind kind);

// Recovers spec on args through its transform; passed iff max rel_err <= tolerance.
// Grid points are evaluated concurrently, rows keep input order.
RoundTripReport roundtrip(const FunctionSpec& spec, InverseKind kind, const std::vector<double>& args,
                          const RoundTripOptions& opts = {}, const QuadratureSpec& q = {});

// ---------------------------------------------------------------------------
// Convergence tables
// ---------------------------------------------------------------------------

struct ConvergenceTable {
  std::string parameter;
  std::vector<double> samples;  // strictly increasing
  std::vector<double> values;
  std::vector<double> deltas;   // values[i+1] - values[i]
  std::vector<double> errors;   // |values[i] - target|
  double target = 0.0;

  double final_error() const { return errors.empty() ? 0.0 : errors.back(); }
};

// I_T(x) = int g(y) sin(T (x - y)) / (pi (x - y)) dy over [lo, hi], the
// truncated Dirichlet kernel applied to g. The interval defaults to [0, inf)
// for half-line specs and [0, 1] for power-family specs. A constant g on a
// half-line is handled through the sine integral; other non-decaying g on a
// half-line throw DomainError.
ConvergenceTable delta_check(double x, const FunctionSpec& g, const std::vector<double>& t_values,
                             const QuadratureSpec& q = {},
                             std::optional<std::pair<double, double>> interval = std::nullopt);

// Sine integral Si(s) = int_0^s sin(u)/u du by quadrature.
double sine_integral(double s, const QuadratureSpec& q = {});

// ---------------------------------------------------------------------------
// Rectangle invariance
// ---------------------------------------------------------------------------

enum class HeightScale {
  Absolute,          // half-heights used as given (raised to enclose poles)
  RelativeToPoleBox  // half-height = factor * (max |Im p| + delta)
};

struct SweepPoint {
  double delta;
  double half_height;
  cplx value;
};

struct SweepTable {
  std::vector<SweepPoint> points;
  double spread = 0.0;  // max pairwise |value_i - value_j|
  std::optional<double> oracle;
};

SweepTable invariance_sweep(const TransformExpr& t, InverseKind kind, double arg,
                            const std::vector<double>& deltas, const std::vector<double>& heights,
                            const QuadratureSpec& q = {}, HeightScale scale = HeightScale::Absolute);

// ---------------------------------------------------------------------------
// Cauchy reproduction
// ---------------------------------------------------------------------------

struct CauchyRow {
  cplx z;
  cplx reproduced;
  cplx direct;
  double rel_err;
};

std::vector<CauchyRow> cauchy_sweep(const TransformExpr& t, const Contour& rect,
                                    const std::vector<cplx>& zs, const QuadratureSpec& q = {});

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::string roundtrip_csv(const RoundTripReport& report);
std::string format_real(double v);

}  // namespace rectinv
