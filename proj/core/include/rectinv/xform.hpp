#pragma once

// Direct transforms of catalog functions and the TransformExpr value type.
//
//   Laplace  L[f](z) = int_0^inf e^{-xz} f(x) dx
//   Moment   M[F](z) = int_0^1  y^{z-1} F(y) dy
//   Mellin  MT[f](z) = int_0^inf x^{z-1} f(x) dx

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rectinv/funcat.hpp"
#include "rectinv/quad.hpp"

namespace rectinv {

enum class TransformKind { Laplace, Moment, Mellin };

std::string_view transform_kind_name(TransformKind kind) noexcept;
TransformKind transform_kind_from_name(std::string_view name);

struct Pole {
  cplx location;
  cplx residue;

  friend bool operator==(const Pole&, const Pole&) = default;
};

// Distance below which a point counts as sitting on a pole.
inline constexpr double kPoleHitRadius = 1e-12;

class TransformExpr {
 public:
  enum class Form { Rational, Numeric, GammaFn };

  struct Source {
    FunctionSpec spec;
    TransformKind kind;
  };

  // sum_k residue_k / (z - location_k). Needs at least one pole and pairwise
  // distinct locations; repeated poles are rejected rather than merged.
  static TransformExpr rational(std::vector<Pole> poles);
  // Value computed by direct quadrature of the source at each z. Throws
  // OutOfDomain when the pair has no convergence region.
  static TransformExpr numeric(FunctionSpec spec, TransformKind kind);
  // Euler Gamma, evaluated through its defining integral.
  static TransformExpr gamma();

  Form form() const noexcept { return form_; }
  std::span<const Pole> poles() const noexcept { return poles_; }
  const std::optional<Source>& source() const noexcept { return source_; }

  // Region where the defining integral converges, c1 < Re z < c2. For a
  // rational expression this is the half-plane right of its rightmost pole.
  const Strip& validity() const noexcept { return validity_; }

 private:
  TransformExpr(Form form, std::vector<Pole> poles, std::optional<Source> source, Strip validity)
      : form_(form), poles_(std::move(poles)), source_(std::move(source)), validity_(validity) {}

  Form form_;
  std::vector<Pole> poles_;
  std::optional<Source> source_;
  Strip validity_;
};

// Smallest admissible Re z for the moment integral of spec.
double moment_index(const FunctionSpec& spec);

cplx laplace_transform(const FunctionSpec& spec, cplx z, const QuadratureSpec& q = {});
cplx mellin_moment(const FunctionSpec& spec, cplx z, const QuadratureSpec& q = {});
cplx mellin_transform(const FunctionSpec& spec, cplx z, const QuadratureSpec& q = {});

// Same integrals with the quadrature estimate exposed.
Estimate laplace_estimate(const FunctionSpec& spec, cplx z, const QuadratureSpec& q = {});
Estimate moment_estimate(const FunctionSpec& spec, cplx z, const QuadratureSpec& q = {});
Estimate mellin_estimate(const FunctionSpec& spec, cplx z, const QuadratureSpec& q = {});

// The two halves of the Mellin integral: int_0^1 and int_1^inf.
struct MellinSplit {
  Estimate unit_part;
  Estimate tail_part;
};
MellinSplit mellin_split(const FunctionSpec& spec, cplx z, const QuadratureSpec& q = {});

// Throws NoStrip when the Mellin integral converges nowhere.
Strip holomorphy_strip(const FunctionSpec& spec);

// Closed forms; throws NoClosedForm for pairs outside the table.
TransformExpr analytic_transform(const FunctionSpec& spec, TransformKind kind);

cplx eval_transform(const TransformExpr& t, cplx z, const QuadratureSpec& q = {});
Estimate eval_transform_estimate(const TransformExpr& t, cplx z, const QuadratureSpec& q = {});

std::string transform_to_json(const TransformExpr& t);
TransformExpr transform_from_json(const std::string& text);

}  // namespace rectinv
