#include "rectinv/xform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

#include "format.hpp"
#include "json.hpp"
#include "rectinv/error.hpp"

namespace rectinv {

namespace {

// what is a message or a callable producing one, so hot paths only pay
// for formatting when they actually throw.
template <typename Message>
void require(bool ok, ErrorCode code, Message&& what) {
  if (ok) return;
  if constexpr (std::is_invocable_v<Message>) {
    throw Error(code, what());
  } else {
    throw Error(code, std::string(what));
  }
}

std::string re_str(cplx z) { return detail::complex_literal(z); }

// Merges coincident locations and drops cancelled terms; used only for
// closed forms built here, where coincidences come from equal parameters.
std::vector<Pole> merge_poles(const std::vector<Pole>& raw) {
  std::vector<Pole> out;
  for (const Pole& p : raw) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Pole& o) {
      return std::abs(o.location - p.location) < kPoleHitRadius;
    });
    if (it == out.end()) {
      out.push_back(p);
    } else {
      it->residue += p.residue;
    }
  }
  std::erase_if(out, [](const Pole& p) { return p.residue == cplx{}; });
  return out;
}

Strip validity_for(const FunctionSpec& spec, TransformKind kind) {
  switch (kind) {
    case TransformKind::Laplace:
      require(!spec.is_power_family(), ErrorCode::OutOfDomain,
              [&] { return "Laplace transform needs a half-line function, got " + format_spec(spec); });
      return {growth_bounds(spec).right_index, kInf};
    case TransformKind::Moment: return {moment_index(spec), kInf};
    case TransformKind::Mellin: return holomorphy_strip(spec);
  }
  return {-kInf, kInf};
}

Estimate gamma_estimate(cplx z, const QuadratureSpec& q) {
  return mellin_estimate(FunctionSpec::exp_minus_x(), z, q);
}

}  // namespace

std::string_view transform_kind_name(TransformKind kind) noexcept {
  switch (kind) {
    case TransformKind::Laplace: return "laplace";
    case TransformKind::Moment: return "moment";
    case TransformKind::Mellin: return "mellin";
  }
  return "?";
}

TransformKind transform_kind_from_name(std::string_view name) {
  if (name == "laplace") return TransformKind::Laplace;
  if (name == "moment") return TransformKind::Moment;
  if (name == "mellin") return TransformKind::Mellin;
  throw Error(ErrorCode::InvalidArgument, "unknown transform kind '" + std::string(name) + "'");
}

TransformExpr TransformExpr::rational(std::vector<Pole> poles) {
  require(!poles.empty(), ErrorCode::InvalidArgument, "rational transform needs a pole");
  double right = -kInf;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const auto& p = poles[i];
    require(std::isfinite(p.location.real()) && std::isfinite(p.location.imag()) &&
                std::isfinite(p.residue.real()) && std::isfinite(p.residue.imag()),
            ErrorCode::InvalidArgument, "pole data must be finite");
    for (std::size_t j = 0; j < i; ++j) {
      require(std::abs(poles[j].location - p.location) >= kPoleHitRadius,
              ErrorCode::InvalidArgument, [&] { return "repeated pole at " + re_str(p.location); });
    }
    right = std::max(right, p.location.real());
  }
  return {Form::Rational, std::move(poles), std::nullopt, Strip(right, kInf)};
}

TransformExpr TransformExpr::numeric(FunctionSpec spec, TransformKind kind) {
  Strip validity = validity_for(spec, kind);
  return {Form::Numeric, {}, Source{std::move(spec), kind}, validity};
}

TransformExpr TransformExpr::gamma() { return {Form::GammaFn, {}, std::nullopt, Strip(0.0, kInf)}; }

double moment_index(const FunctionSpec& spec) {
  // Half-line catalog functions are bounded and nonzero at y = 0.
  return spec.is_power_family() ? growth_bounds(spec).right_index : 0.0;
}

Estimate laplace_estimate(const FunctionSpec& spec, cplx z, const QuadratureSpec& q) {
  const Strip valid = validity_for(spec, TransformKind::Laplace);
  require(valid.contains(z.real()), ErrorCode::OutOfDomain,
          [&] {
            return "Laplace transform of " + format_spec(spec) + " needs Re z > " +
                   detail::shortest(valid.c1) + ", got z = " + re_str(z);
          });
  // The exponential rates join the kernel exponent: for Re z < 0 the two
  // factors would otherwise overflow and underflow separately.
  const auto& p = spec.params();
  switch (spec.kind()) {
    case FunctionKind::Exp:
      return integrate_halfline([&](double x) { return std::exp(-x * (z + p[0])); }, 0.0, q);
    case FunctionKind::ExpMinusX:
      return integrate_halfline([&](double x) { return std::exp(-x * (z + 1.0)); }, 0.0, q);
    case FunctionKind::MixedExp:
      return integrate_halfline(
          [&](double x) {
            const double s = std::sin(x);
            const double c = std::cos(x);
            return std::exp(-x * (z + p[0])) * (s * s) + std::exp(-x * (z + p[1])) * (c * c);
          },
          0.0, q);
    default: break;
  }
  return integrate_halfline([&](double x) { return std::exp(-x * z) * eval(spec, x); }, 0.0, q);
}

Estimate moment_estimate(const FunctionSpec& spec, cplx z, const QuadratureSpec& q) {
  const double index = moment_index(spec);
  require(z.real() > index, ErrorCode::OutOfDomain,
          [&] {
            return "Mellin moment of " + format_spec(spec) + " needs Re z > " +
                   detail::shortest(index) + ", got z = " + re_str(z);
          });
  if (spec.is_power_family()) {
    // In t = -ln y the integrand is e^{-zt} F(e^{-t}). Far out the two
    // factors overflow and underflow separately although the product is
    // small, so there the powers of y join the kernel exponent.
    const auto& p = spec.params();
    const bool mixed = spec.kind() == FunctionKind::MixedPower;
    return integrate_halfline(
        [&](double t) {
          const double y = std::exp(-t);
          if (y >= std::numeric_limits<double>::min() && std::abs(z.real()) * t < 600.0) {
            return std::exp(-z * t) * eval(spec, y);
          }
          if (!mixed) return std::exp(-(z + p[0]) * t);
          const double log_sin = y >= std::numeric_limits<double>::min() ? std::log(std::sin(y)) : -t;
          const double log_cos = std::log(std::cos(y));
          return std::exp(-(z + p[0]) * t + 2.0 * log_sin) + std::exp(-(z + p[1]) * t + 2.0 * log_cos);
        },
        0.0, q);
  }
  return integrate_unit_singular([&](double y) { return cplx(eval(spec, y)); }, z, q);
}

MellinSplit mellin_split(const FunctionSpec& spec, cplx z, const QuadratureSpec& q) {
  const Strip strip = holomorphy_strip(spec);
  require(strip.contains(z.real()), ErrorCode::OutOfDomain,
          [&] {
            return "Mellin transform of " + format_spec(spec) + " needs " +
                   detail::shortest(strip.c1) + " < Re z < " + detail::shortest(strip.c2) +
                   ", got z = " + re_str(z);
          });
  MellinSplit split;
  split.unit_part = integrate_unit_singular([&](double x) { return cplx(eval(spec, x)); }, z, q);
  split.tail_part = integrate_halfline(
      [&](double x) { return std::exp((z - 1.0) * std::log(x)) * eval(spec, x); }, 1.0, q);
  return split;
}

Estimate mellin_estimate(const FunctionSpec& spec, cplx z, const QuadratureSpec& q) {
  MellinSplit split = mellin_split(spec, z, q);
  split.unit_part += split.tail_part;
  return split.unit_part;
}

cplx laplace_transform(const FunctionSpec& spec, cplx z, const QuadratureSpec& q) {
  return laplace_estimate(spec, z, q).value;
}

cplx mellin_moment(const FunctionSpec& spec, cplx z, const QuadratureSpec& q) {
  return moment_estimate(spec, z, q).value;
}

cplx mellin_transform(const FunctionSpec& spec, cplx z, const QuadratureSpec& q) {
  return mellin_estimate(spec, z, q).value;
}

Strip holomorphy_strip(const FunctionSpec& spec) {
  const auto& p = spec.params();
  switch (spec.kind()) {
    case FunctionKind::ExpMinusX: return {0.0, kInf};
    case FunctionKind::Exp:
      if (p[0] > 0.0) return {0.0, kInf};
      break;
    case FunctionKind::MixedExp:
      if (std::min(p[0], p[1]) > 0.0) return {0.0, kInf};
      break;
    case FunctionKind::Power:
    case FunctionKind::MixedPower: break;
  }
  throw Error(ErrorCode::NoStrip, "Mellin integral of " + format_spec(spec) + " diverges for every z");
}

TransformExpr analytic_transform(const FunctionSpec& spec, TransformKind kind) {
  const auto& p = spec.params();
  const cplx two_i(0.0, 2.0);
  switch (spec.kind()) {
    case FunctionKind::Exp:
      if (kind == TransformKind::Laplace) return TransformExpr::rational({{-p[0], 1.0}});
      break;
    case FunctionKind::ExpMinusX:
      if (kind == TransformKind::Laplace) return TransformExpr::rational({{-1.0, 1.0}});
      if (kind == TransformKind::Mellin) return TransformExpr::gamma();
      break;
    case FunctionKind::Power:
      if (kind == TransformKind::Moment) return TransformExpr::rational({{-p[0], 1.0}});
      break;
    case FunctionKind::MixedExp:
      if (kind == TransformKind::Laplace) {
        // sin^2 x = 1/2 - (e^{2ix} + e^{-2ix})/4, cos^2 x = 1/2 + (e^{2ix} + e^{-2ix})/4.
        const double g1 = p[0];
        const double g2 = p[1];
        return TransformExpr::rational(merge_poles({
            {-g1, 0.5},
            {-g1 + two_i, -0.25},
            {-g1 - two_i, -0.25},
            {-g2, 0.5},
            {-g2 + two_i, 0.25},
            {-g2 - two_i, 0.25},
        }));
      }
      break;
    case FunctionKind::MixedPower: break;
  }
  throw Error(ErrorCode::NoClosedForm, "no closed form for the " +
                                           std::string(transform_kind_name(kind)) +
                                           " transform of " + format_spec(spec));
}

Estimate eval_transform_estimate(const TransformExpr& t, cplx z, const QuadratureSpec& q) {
  switch (t.form()) {
    case TransformExpr::Form::Rational: {
      Estimate est;
      est.panels_used = 0;
      for (const Pole& p : t.poles()) {
        const cplx d = z - p.location;
        if (std::abs(d) < kPoleHitRadius) {
          throw Error(ErrorCode::PoleHit, "z = " + re_str(z) + " sits on the pole " + re_str(p.location));
        }
        est.value += p.residue / d;
      }
      return est;
    }
    case TransformExpr::Form::Numeric: {
      const auto& src = *t.source();
      switch (src.kind) {
        case TransformKind::Laplace: return laplace_estimate(src.spec, z, q);
        case TransformKind::Moment: return moment_estimate(src.spec, z, q);
        case TransformKind::Mellin: return mellin_estimate(src.spec, z, q);
      }
      break;
    }
    case TransformExpr::Form::GammaFn:
      require(z.real() > 0.0, ErrorCode::OutOfDomain,
              [&] { return "Gamma integral needs Re z > 0, got z = " + re_str(z); });
      return gamma_estimate(z, q);
  }
  return {};
}

cplx eval_transform(const TransformExpr& t, cplx z, const QuadratureSpec& q) {
  return eval_transform_estimate(t, z, q).value;
}

std::string transform_to_json(const TransformExpr& t) {
  nlohmann::json j;
  switch (t.form()) {
    case TransformExpr::Form::Rational: {
      j["form"] = "rational";
      auto poles = nlohmann::json::array();
      for (const Pole& p : t.poles()) {
        poles.push_back({{"re", p.location.real()},
                         {"im", p.location.imag()},
                         {"res_re", p.residue.real()},
                         {"res_im", p.residue.imag()}});
      }
      j["poles"] = std::move(poles);
      break;
    }
    case TransformExpr::Form::Numeric:
      j["form"] = "numeric";
      j["source"] = nlohmann::json::parse(spec_to_json(t.source()->spec));
      j["kind"] = transform_kind_name(t.source()->kind);
      break;
    case TransformExpr::Form::GammaFn: j["form"] = "gamma"; break;
  }
  return j.dump();
}

TransformExpr transform_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto form = j.at("form").get<std::string>();
    if (form == "rational") {
      std::vector<Pole> poles;
      for (const auto& p : j.at("poles")) {
        poles.push_back({{p.at("re").get<double>(), p.at("im").get<double>()},
                         {p.at("res_re").get<double>(), p.at("res_im").get<double>()}});
      }
      return TransformExpr::rational(std::move(poles));
    }
    if (form == "numeric") {
      return TransformExpr::numeric(spec_from_json(j.at("source").dump()),
                                    transform_kind_from_name(j.at("kind").get<std::string>()));
    }
    if (form == "gamma") return TransformExpr::gamma();
    throw Error(ErrorCode::InvalidArgument, "unknown transform form '" + form + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad transform JSON: ") + e.what());
  }
}

}  // namespace rectinv
