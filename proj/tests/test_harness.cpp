#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "rectinv/error.hpp"
#include "rectinv/harness.hpp"

using namespace rectinv;
using rectinv::testing::Sampler;

namespace {

int parse_column(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return static_cast<int>(e.column());
  }
  FAIL("expected ParseError");
  return -1;
}

}  // namespace

TEST_CASE("function strings") {
  CHECK(parse_spec_string("exp:gamma=1") == FunctionSpec::exp(1.0));
  CHECK(parse_spec_string(" mixedexp : g2 = 2 , g1=1 ") == FunctionSpec::mixed_exp(1.0, 2.0));
  CHECK(parse_spec_string("power:gamma=-0.5") == FunctionSpec::power(-0.5));
  CHECK(parse_spec_string("expminusx") == FunctionSpec::exp_minus_x());
  CHECK(parse_spec_string("mixedpower:g1=1e-1,g2=2") == FunctionSpec::mixed_power(0.1, 2.0));

  CHECK(parse_column([] { parse_spec_string("exp:gamma="); }) == 11);
  CHECK(parse_column([] { parse_spec_string("sinc:gamma=1"); }) == 1);
  CHECK(parse_column([] { parse_spec_string("exp:beta=1"); }) == 5);
  CHECK(parse_column([] { parse_spec_string("mixedexp:g1=1,g1=2"); }) == 15);
  CHECK(parse_column([] { parse_spec_string("exp:gamma=1x"); }) == 12);
  CHECK_THROWS_AS(parse_spec_string("mixedexp:g1=1"), ParseError);
}

TEST_CASE("format then parse is the identity on catalog specs") {
  Sampler rng(2);
  for (int i = 0; i < 40; ++i) {
    const double a = rng.uniform(-3.0, 3.0);
    const double b = rng.uniform(-3.0, 3.0);
    const FunctionSpec specs[] = {FunctionSpec::exp(a), FunctionSpec::power(a),
                                  FunctionSpec::mixed_exp(a, b), FunctionSpec::mixed_power(a, b),
                                  FunctionSpec::exp_minus_x()};
    for (const auto& s : specs) CHECK(parse_spec_string(format_spec(s)) == s);
  }
}

TEST_CASE("complex literals, grids and lists") {
  CHECK(parse_complex("1") == cplx(1.0));
  CHECK(parse_complex("1+2i") == cplx(1.0, 2.0));
  CHECK(parse_complex("-0.5-3i") == cplx(-0.5, -3.0));
  CHECK(parse_complex("1e-3+1e2i") == cplx(1e-3, 100.0));
  CHECK_THROWS_AS(parse_complex(""), ParseError);
  CHECK_THROWS_AS(parse_complex("1+2"), ParseError);

  const auto g = parse_grid("0.25:4:5");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.25);
  CHECK(g[2] == doctest::Approx(2.125));
  CHECK(g.back() == 4.0);
  CHECK(parse_grid("2:9:1") == std::vector<double>{2.0});
  CHECK(parse_column([] { parse_grid("0:1:0"); }) == 5);
  CHECK_THROWS_AS(parse_grid("0:1"), ParseError);

  CHECK(parse_real_list("20,40,80") == std::vector<double>{20, 40, 80});
  CHECK_THROWS_AS(parse_real_list("1,,2"), ParseError);

  const auto t = parse_pole_list("[[-1,0,1,0],[-2,1,0.5,0]]");
  CHECK(t.poles().size() == 2);
  CHECK_THROWS_AS(parse_pole_list("[[-1,0,1]]"), ParseError);
  CHECK_THROWS_AS(parse_pole_list("{"), ParseError);
}

TEST_CASE("transform selection by kernel") {
  CHECK(transform_for(FunctionSpec::exp(1), InverseKind::LaplaceKernel).form() ==
        TransformExpr::Form::Rational);
  CHECK(transform_for(FunctionSpec::exp_minus_x(), InverseKind::MellinKernel).form() ==
        TransformExpr::Form::GammaFn);
  const auto numeric = transform_for(FunctionSpec::mixed_power(1, 2), InverseKind::MellinKernel);
  CHECK(numeric.form() == TransformExpr::Form::Numeric);
  CHECK(numeric.source()->kind == TransformKind::Moment);
}

TEST_CASE("rectangle round trips") {
  const auto lap = roundtrip(FunctionSpec::exp(1.0), InverseKind::LaplaceKernel,
                             {-5.0, -2.0, -0.5, 0.0, 0.5, 2.0, 5.0});
  CHECK(lap.passed);
  CHECK(lap.max_rel_err <= 1e-10);
  CHECK(lap.tolerance == kRectangleTolerance);
  REQUIRE(lap.rows.size() == 7);
  CHECK(lap.rows[1].arg == -2.0);
  CHECK(lap.rows[1].recovered == doctest::Approx(7.3890561).epsilon(1e-7));

  const auto mom = roundtrip(FunctionSpec::power(0.5), InverseKind::MellinKernel, parse_grid("0.05:10:9"));
  CHECK(mom.passed);

  const auto mixed = roundtrip(FunctionSpec::mixed_exp(1.0, 2.0), InverseKind::LaplaceKernel,
                               parse_grid("0:6:13"), {true, 0.1, std::nullopt, 1e-9});
  CHECK(mixed.passed);

  CHECK_THROWS_AS(roundtrip(FunctionSpec::exp(1), InverseKind::LaplaceKernel, {}), Error);
  CHECK_THROWS_AS(roundtrip(FunctionSpec::exp_minus_x(), InverseKind::MellinKernel, {1.0}), Error);
}

TEST_CASE("line round trip of the Gamma function") {
  RoundTripOptions opts;
  opts.use_rectangle = false;
  opts.delta = 1.0;
  opts.half_height = 50.0;
  const auto r = roundtrip(FunctionSpec::exp_minus_x(), InverseKind::MellinKernel, {1.0}, opts);
  CHECK(r.contour.c_right() == 1.0);
  CHECK(std::abs(r.rows[0].recovered - std::exp(-1.0)) <= 1e-4);
  CHECK(r.passed);
}

TEST_CASE("round trip CSV") {
  const auto r = roundtrip(FunctionSpec::exp(1.0), InverseKind::LaplaceKernel, {0.0});
  const std::string csv = roundtrip_csv(r);
  CHECK(csv.rfind("arg,truth,recovered,abs_err,rel_err\n0,1,", 0) == 0);
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(-2.0) == "-2");
}

TEST_CASE("delta check against frozen values") {
  // Dirichlet-kernel integrals from mpmath at 30 digits, split at the zeros of sin(T(1 - y)).
  const auto exp1 = delta_check(1.0, FunctionSpec::exp(1.0), {20, 40, 80});
  const double want[] = {0.36140395968426242685, 0.37318364969354754111, 0.36831857413291845898};
  for (int i = 0; i < 3; ++i) CHECK(exp1.values[i] == doctest::Approx(want[i]).epsilon(1e-9));
  CHECK(exp1.target == doctest::Approx(std::exp(-1.0)));
  CHECK(exp1.errors[0] > exp1.errors[1]);
  CHECK(exp1.errors[1] > exp1.errors[2]);
  CHECK(exp1.final_error() <= 5e-2);
  CHECK(exp1.deltas.size() == 2);

  // Constant function: 1/2 + Si(T x)/pi.
  const auto one = delta_check(1.0, FunctionSpec::exp(0.0), {20, 40, 80});
  const double want_one[] = {0.992820639644135799, 1.00515305271719091, 1.00048846565637248};
  for (int i = 0; i < 3; ++i) CHECK(one.values[i] == doctest::Approx(want_one[i]).epsilon(1e-9));
  CHECK(sine_integral(20.0) == doctest::Approx(1.54824170104343984).epsilon(1e-12));

  const auto lin = delta_check(0.5, FunctionSpec::power(1.0), {20, 40, 80}, {}, std::pair{0.0, 2.0});
  const double want_lin[] = {0.497482038732982488, 0.509775203630368741, 0.495597235287188896};
  for (int i = 0; i < 3; ++i) CHECK(lin.values[i] == doctest::Approx(want_lin[i]).epsilon(1e-9));
  // Gibbs-type oscillation from the endpoint jump at y = 2: not monotone.
  CHECK(lin.errors[1] > lin.errors[0]);

  const auto root = delta_check(0.5, FunctionSpec::power(0.5), {20, 40, 80});
  const double want_root[] = {0.740485695984695719, 0.697974311221298437, 0.712225737501586192};
  for (int i = 0; i < 3; ++i) CHECK(root.values[i] == doctest::Approx(want_root[i]).epsilon(1e-9));
  CHECK(root.errors[2] < root.errors[0]);
}

TEST_CASE("delta check validation") {
  CHECK_THROWS_AS(delta_check(1.0, FunctionSpec::exp(1.0), {40, 20}), Error);
  CHECK_THROWS_AS(delta_check(-1.0, FunctionSpec::exp(1.0), {20}), Error);
  CHECK_THROWS_AS(delta_check(1.0, FunctionSpec::exp(-1.0), {20}), Error);
  CHECK_THROWS_AS(delta_check(2.0, FunctionSpec::power(1.0), {20}, {}, std::pair{0.0, kInf}), Error);
}

TEST_CASE("invariance sweep") {
  const auto t = analytic_transform(FunctionSpec::mixed_exp(1.0, 2.0), TransformKind::Laplace);
  const auto abs = invariance_sweep(t, InverseKind::LaplaceKernel, 1.0, {0.1, 0.5, 1.0}, {3, 6, 12});
  CHECK(abs.points.size() == 9);
  CHECK(abs.spread <= 1e-7);
  REQUIRE(abs.oracle);
  CHECK(abs.points[0].value.real() == doctest::Approx(*abs.oracle).epsilon(1e-10));
  // Half-heights are raised to clear the pole box.
  CHECK(abs.points[0].half_height == 3.0);

  const auto rel = invariance_sweep(t, InverseKind::LaplaceKernel, 1.0, {0.5}, {1, 2, 4}, {},
                                    HeightScale::RelativeToPoleBox);
  CHECK(rel.points[0].half_height == 2.5);
  CHECK(rel.points[2].half_height == 10.0);
  CHECK(rel.spread <= 1e-7);
}

TEST_CASE("cauchy sweep") {
  const auto t = TransformExpr::rational({{-1.0, 1.0}});
  const auto rect = rectangle_for(t, 0.5, default_half_height(t, 0.5));
  const auto rows = cauchy_sweep(t, rect, {cplx(0.5, 0.0), cplx(1.0, 3.0), cplx(2.0, -7.0)});
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.rel_err <= 1e-10);
  CHECK_THROWS_AS(cauchy_sweep(t, rect, {cplx(-1.0, 0.5)}), Error);
}
