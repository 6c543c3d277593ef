#pragma once

// Closed catalog of test functions with exact growth metadata.
//
//   Exp        f(x) = e^{-g x}
//   Power      F(y) = y^g
//   MixedExp   f(x) = e^{-g1 x} sin^2 x + e^{-g2 x} cos^2 x
//   MixedPower F(y) = y^{g1} sin^2 y + y^{g2} cos^2 y
//   ExpMinusX  f(x) = e^{-x}
//
// Spectator parameters (alphas) ride along with a spec and are serialized,
// but no catalog formula reads them.

#include <limits>
#include <string>
#include <vector>

namespace rectinv {

enum class FunctionKind { Exp, Power, MixedExp, MixedPower, ExpMinusX };

enum class DomainHint { HalfLine, UnitInterval, FullLine };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class FunctionSpec {
 public:
  // Validates parameter count and finiteness; throws Error(InvalidArgument).
  FunctionSpec(FunctionKind kind, std::vector<double> params, std::vector<double> alphas = {});

  static FunctionSpec exp(double gamma) { return {FunctionKind::Exp, {gamma}}; }
  static FunctionSpec power(double gamma) { return {FunctionKind::Power, {gamma}}; }
  static FunctionSpec mixed_exp(double g1, double g2) { return {FunctionKind::MixedExp, {g1, g2}}; }
  static FunctionSpec mixed_power(double g1, double g2) {
    return {FunctionKind::MixedPower, {g1, g2}};
  }
  static FunctionSpec exp_minus_x() { return {FunctionKind::ExpMinusX, {}}; }

  FunctionKind kind() const noexcept { return kind_; }
  const std::vector<double>& params() const noexcept { return params_; }
  const std::vector<double>& alphas() const noexcept { return alphas_; }
  DomainHint domain_hint() const noexcept;

  bool is_power_family() const noexcept {
    return kind_ == FunctionKind::Power || kind_ == FunctionKind::MixedPower;
  }

  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;

 private:
  FunctionKind kind_;
  std::vector<double> params_;
  std::vector<double> alphas_;
};

// Exponential (Laplace side) or power-like (moment side) growth indices.
// right_index a: |f(x)| <= A e^{a x} on x >= 0, resp. F(y) <= A / y^a on (0, 1].
// left_index is the matching lower bound, -inf when none exists.
struct GrowthBounds {
  double right_index;
  double left_index;
  double amplitude;

  friend bool operator==(const GrowthBounds&, const GrowthBounds&) = default;
};

// Holomorphy strip c1 < Re z < c2 of a Mellin transform; either border may be infinite.
struct Strip {
  double c1;
  double c2;

  Strip(double lo, double hi);
  bool contains(double re) const noexcept { return c1 < re && re < c2; }

  friend bool operator==(const Strip&, const Strip&) = default;
};

double eval(const FunctionSpec& spec, double x);

GrowthBounds growth_bounds(const FunctionSpec& spec);

// G(y) = f(-ln y). Only images that stay inside the catalog are supported.
FunctionSpec to_moment_form(const FunctionSpec& spec);

std::string_view kind_name(FunctionKind kind) noexcept;

// Canonical spec string, e.g. "mixedexp:g1=1,g2=2". Parsed back by parse_spec_string.
std::string format_spec(const FunctionSpec& spec);

// {"kind": "...", "params": [...], "alphas": [...]}; alphas omitted when empty.
std::string spec_to_json(const FunctionSpec& spec);
FunctionSpec spec_from_json(const std::string& text);

}  // namespace rectinv
