#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "rectinv/error.hpp"
#include "rectinv/funcat.hpp"

using namespace rectinv;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected rectinv::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("eval follows the catalog formulas") {
  CHECK(eval(FunctionSpec::exp(1.0), 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(eval(FunctionSpec::power(0.5), 4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eval(FunctionSpec::mixed_exp(1.0, 2.0), 0.0) == 1.0);
  CHECK(eval(FunctionSpec::exp_minus_x(), 1.0) == doctest::Approx(std::exp(-1.0)));
  // Laplace-side functions are defined on the whole real line.
  CHECK(eval(FunctionSpec::exp(1.0), -2.0) == doctest::Approx(std::exp(2.0)));
}

TEST_CASE("eval rejects negative arguments for power kinds") {
  CHECK(code_of([] { eval(FunctionSpec::power(0.5), -1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { eval(FunctionSpec::mixed_power(1, 2), -0.1); }) == ErrorCode::DomainError);
}

TEST_CASE("function construction validates parameters") {
  CHECK(code_of([] { FunctionSpec(FunctionKind::Exp, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { FunctionSpec(FunctionKind::MixedExp, {1.0}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { FunctionSpec::exp(std::nan("")); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { FunctionSpec(FunctionKind::Exp, {1.0}, {kInf}); }) ==
        ErrorCode::InvalidArgument);
  CHECK_NOTHROW(FunctionSpec::mixed_exp(1.5, 1.5));
}

TEST_CASE("growth bounds") {
  const auto exp1 = growth_bounds(FunctionSpec::exp(1.0));
  CHECK(exp1.right_index == -1.0);
  CHECK(exp1.left_index == -1.0);
  CHECK(growth_bounds(FunctionSpec::power(0.5)).right_index == -0.5);
  CHECK(growth_bounds(FunctionSpec::exp_minus_x()).right_index == -1.0);

  const auto mixed = growth_bounds(FunctionSpec::mixed_exp(1.0, 2.0));
  CHECK(mixed.right_index == -1.0);
  CHECK(mixed.left_index == -2.0);
  CHECK(mixed.amplitude > 0.0);

  SUBCASE("mixed bounds agree with a dense-grid oracle") {
    double upper = -kInf;
    double lower = kInf;
    for (double x = 1.0; x <= 60.0; x += 1e-3) {
      const double r = std::log(rectinv::testing::mixed_exp(1.0, 2.0, x)) / x;
      upper = std::max(upper, r);
      lower = std::min(lower, r);
    }
    CHECK(upper == doctest::Approx(mixed.right_index).epsilon(0.02));
    CHECK(lower == doctest::Approx(mixed.left_index).epsilon(0.1));
  }

  CHECK(growth_bounds(FunctionSpec::mixed_exp(2.0, 1.0)) == mixed);
  CHECK(growth_bounds(FunctionSpec::exp(0.3)) == growth_bounds(FunctionSpec::exp(0.3)));
}

TEST_CASE("growth bound is tight for pure kinds and an upper bound for mixed kinds") {
  for (double gamma : {-0.5, 0.0, 0.7, 2.0}) {
    const auto e = FunctionSpec::exp(gamma);
    const auto p = FunctionSpec::power(gamma);
    for (double x = 0.0; x <= 10.0; x += 0.25) {
      CHECK(std::log(eval(e, x)) - growth_bounds(e).right_index * x ==
            doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
      if (x > 0.0) {
        // F(y) = A / y^a with A = 1.
        CHECK(std::log(eval(p, x)) + growth_bounds(p).right_index * std::log(x) ==
              doctest::Approx(0.0).scale(1.0));
      }
    }
  }
  const auto m = FunctionSpec::mixed_exp(0.4, 1.3);
  for (double x = 1.0; x <= 30.0; x += 0.1) {
    CHECK(std::log(eval(m, x)) - growth_bounds(m).right_index * x <= 1e-12);
  }
}

TEST_CASE("moment form maps e^{-g x} to y^g") {
  CHECK(to_moment_form(FunctionSpec::exp(0.5)) == FunctionSpec::power(0.5));
  CHECK(to_moment_form(FunctionSpec::exp(0.0)) == FunctionSpec::power(0.0));
  CHECK(to_moment_form(FunctionSpec::exp_minus_x()) == FunctionSpec::power(1.0));
  CHECK(code_of([] { to_moment_form(FunctionSpec::mixed_exp(1, 2)); }) == ErrorCode::UnsupportedMap);
  CHECK(code_of([] { to_moment_form(FunctionSpec::power(1)); }) == ErrorCode::UnsupportedMap);

  rectinv::testing::Sampler rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto f = FunctionSpec::exp(rng.uniform(-3.0, 3.0));
    const auto g = to_moment_form(f);
    for (double y : {1e-6, 0.01, 0.3, 0.77, 1.0}) {
      CHECK(eval(g, y) == doctest::Approx(eval(f, -std::log(y))).epsilon(1e-13));
    }
  }
}

TEST_CASE("spectator parameters survive serialization and are ignored by eval") {
  const FunctionSpec plain = FunctionSpec::exp(1.25);
  const FunctionSpec with_alphas(FunctionKind::Exp, {1.25}, {3.0, -4.5});
  CHECK(eval(with_alphas, 0.8) == eval(plain, 0.8));
  CHECK(spec_from_json(spec_to_json(with_alphas)) == with_alphas);
  CHECK(spec_to_json(plain).find("alphas") == std::string::npos);
  CHECK(spec_from_json(R"({"kind":"mixedpower","params":[1,2]})") == FunctionSpec::mixed_power(1, 2));
  CHECK(code_of([] { spec_from_json(R"({"kind":"sinc","params":[]})"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { spec_from_json("{"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("strip ordering") {
  CHECK_NOTHROW(Strip(0.0, kInf));
  CHECK(code_of([] { Strip(1.0, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(Strip(0.0, kInf).contains(1e9));
  CHECK_FALSE(Strip(0.0, kInf).contains(0.0));
}
