#include "rectinv/funcat.hpp"

#include <algorithm>
#include <cmath>

#include "format.hpp"
#include "json.hpp"
#include "rectinv/error.hpp"

namespace rectinv {

namespace {

std::size_t expected_params(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Exp:
    case FunctionKind::Power: return 1;
    case FunctionKind::MixedExp:
    case FunctionKind::MixedPower: return 2;
    case FunctionKind::ExpMinusX: return 0;
  }
  return 0;
}

FunctionKind kind_from_name(const std::string& name) {
  if (name == "exp") return FunctionKind::Exp;
  if (name == "power") return FunctionKind::Power;
  if (name == "mixedexp") return FunctionKind::MixedExp;
  if (name == "mixedpower") return FunctionKind::MixedPower;
  if (name == "expminusx") return FunctionKind::ExpMinusX;
  throw Error(ErrorCode::InvalidArgument, "unknown function kind '" + name + "'");
}

}  // namespace

FunctionSpec::FunctionSpec(FunctionKind kind, std::vector<double> params,
                           std::vector<double> alphas)
    : kind_(kind), params_(std::move(params)), alphas_(std::move(alphas)) {
  if (params_.size() != expected_params(kind_)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(kind_name(kind_)) + " takes " +
                    std::to_string(expected_params(kind_)) + " parameter(s), got " +
                    std::to_string(params_.size()));
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(params_.begin(), params_.end(), finite) ||
      !std::all_of(alphas_.begin(), alphas_.end(), finite)) {
    throw Error(ErrorCode::InvalidArgument, "parameters must be finite");
  }
}

DomainHint FunctionSpec::domain_hint() const noexcept {
  return is_power_family() ? DomainHint::UnitInterval : DomainHint::HalfLine;
}

Strip::Strip(double lo, double hi) : c1(lo), c2(hi) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "strip requires c1 < c2");
}

double eval(const FunctionSpec& spec, double x) {
  const auto& p = spec.params();
  if (spec.is_power_family() && x < 0.0) {
    throw Error(ErrorCode::DomainError, "power-family functions need x >= 0");
  }
  switch (spec.kind()) {
    case FunctionKind::Exp: return std::exp(-p[0] * x);
    case FunctionKind::Power: return std::pow(x, p[0]);
    case FunctionKind::MixedExp: {
      const double s = std::sin(x);
      const double c = std::cos(x);
      return std::exp(-p[0] * x) * s * s + std::exp(-p[1] * x) * c * c;
    }
    case FunctionKind::MixedPower: {
      const double s = std::sin(x);
      const double c = std::cos(x);
      return std::pow(x, p[0]) * s * s + std::pow(x, p[1]) * c * c;
    }
    case FunctionKind::ExpMinusX: return std::exp(-x);
  }
  return 0.0;
}

GrowthBounds growth_bounds(const FunctionSpec& spec) {
  const auto& p = spec.params();
  switch (spec.kind()) {
    case FunctionKind::Exp:
    case FunctionKind::Power: return {-p[0], -p[0], 1.0};
    // sin^2 + cos^2 = 1 sandwiches the mixed kinds between the two pure terms.
    case FunctionKind::MixedExp:
    case FunctionKind::MixedPower:
      return {-std::min(p[0], p[1]), -std::max(p[0], p[1]), 1.0};
    case FunctionKind::ExpMinusX: return {-1.0, -1.0, 1.0};
  }
  return {0.0, 0.0, 1.0};
}

FunctionSpec to_moment_form(const FunctionSpec& spec) {
  if (spec.domain_hint() != DomainHint::HalfLine) {
    throw Error(ErrorCode::UnsupportedMap, "moment form needs a Laplace-side (half-line) function");
  }
  switch (spec.kind()) {
    case FunctionKind::Exp: return {FunctionKind::Power, spec.params(), spec.alphas()};
    case FunctionKind::ExpMinusX: return {FunctionKind::Power, {1.0}, spec.alphas()};
    default:
      throw Error(ErrorCode::UnsupportedMap,
                  std::string(kind_name(spec.kind())) + " has no catalog image under y = e^{-x}");
  }
}

std::string_view kind_name(FunctionKind kind) noexcept {
  switch (kind) {
    case FunctionKind::Exp: return "exp";
    case FunctionKind::Power: return "power";
    case FunctionKind::MixedExp: return "mixedexp";
    case FunctionKind::MixedPower: return "mixedpower";
    case FunctionKind::ExpMinusX: return "expminusx";
  }
  return "?";
}

std::string format_spec(const FunctionSpec& spec) {
  using detail::shortest;
  const auto& p = spec.params();
  std::string out(kind_name(spec.kind()));
  switch (spec.kind()) {
    case FunctionKind::Exp:
    case FunctionKind::Power: out += ":gamma=" + shortest(p[0]); break;
    case FunctionKind::MixedExp:
    case FunctionKind::MixedPower:
      out += ":g1=" + shortest(p[0]) + ",g2=" + shortest(p[1]);
      break;
    case FunctionKind::ExpMinusX: break;
  }
  return out;
}

std::string spec_to_json(const FunctionSpec& spec) {
  nlohmann::json j;
  j["kind"] = kind_name(spec.kind());
  j["params"] = spec.params();
  if (!spec.alphas().empty()) j["alphas"] = spec.alphas();
  return j.dump();
}

FunctionSpec spec_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    auto kind = kind_from_name(j.at("kind").get<std::string>());
    auto params = j.value("params", std::vector<double>{});
    auto alphas = j.value("alphas", std::vector<double>{});
    return {kind, std::move(params), std::move(alphas)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad function JSON: ") + e.what());
  }
}

}  // namespace rectinv
