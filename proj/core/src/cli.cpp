#include "rectinv/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "format.hpp"
#include "json.hpp"
#include "rectinv/error.hpp"
#include "rectinv/harness.hpp"
#include "rectinv/oracle.hpp"

namespace rectinv {

namespace {

using nlohmann::json;

struct GlobalOptions {
  bool json_output = false;
  std::string out_path;
  std::optional<double> tol;
  std::string quad_json;
  bool strict = false;
  std::string config_path;
};

// Options shared by the commands that take a transform.
struct SourceOptions {
  std::string func;
  std::string poles;
  std::string kind = "laplace";
};

struct CommandOutput {
  std::string csv;
  json summary = json::object();
  bool failed = false;  // drives exit 3 under --strict
};

std::string real(double v) { return detail::shortest(v); }

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

void usage_error(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

TransformExpr resolve_transform(const SourceOptions& src, InverseKind kind) {
  if (!src.poles.empty() && !src.func.empty()) usage_error("give either --poles or --func, not both");
  if (!src.poles.empty()) return parse_pole_list(src.poles);
  if (!src.func.empty()) return transform_for(parse_spec_string(src.func), kind);
  usage_error("a transform is required: --poles or --func");
  return TransformExpr::gamma();
}

std::vector<double> resolve_args(const std::vector<std::string>& xs, const std::string& grid) {
  std::vector<double> args;
  for (const auto& x : xs) args.push_back(parse_real_list(x).front());
  if (!grid.empty()) {
    const auto g = parse_grid(grid);
    args.insert(args.end(), g.begin(), g.end());
  }
  if (args.empty()) throw Error(ErrorCode::EmptyGrid, "no evaluation points: use --x or --grid");
  return args;
}

// Applies config-file values to options the command line left unset.
void apply_config(const json& config, CLI::App& app, CLI::App* sub) {
  for (const auto& [key, value] : config.items()) {
    CLI::Option* opt = app.get_option_no_throw("--" + key);
    if (opt == nullptr && sub != nullptr) opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) usage_error("unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    auto as_text = [](const json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
      return v.dump();
    };
    if (value.is_array() && opt->get_expected_max() > 1) {
      for (const auto& v : value) opt->add_result(as_text(v));
    } else {
      opt->add_result(as_text(value));
    }
    opt->run_callback();
  }
}

CommandOutput run_transform(const SourceOptions& src, const std::vector<std::string>& zs,
                            bool analytic, const QuadratureSpec& q) {
  if (src.func.empty()) usage_error("transform needs --func");
  const FunctionSpec spec = parse_spec_string(src.func);
  const TransformKind kind = transform_kind_from_name(src.kind);
  if (zs.empty()) usage_error("transform needs at least one --z");
  const std::optional<TransformExpr> closed =
      analytic ? std::optional(analytic_transform(spec, kind)) : std::nullopt;

  CommandOutput result;
  std::ostringstream csv;
  csv << "re_z,im_z,re_val,im_val,err_est\n";
  json rows = json::array();
  for (const auto& text : zs) {
    const cplx z = parse_complex(text);
    Estimate est;
    if (closed) {
      est = eval_transform_estimate(*closed, z, q);
    } else if (kind == TransformKind::Laplace) {
      est = laplace_estimate(spec, z, q);
    } else if (kind == TransformKind::Moment) {
      est = moment_estimate(spec, z, q);
    } else {
      est = mellin_estimate(spec, z, q);
    }
    result.failed = result.failed || !est.converged;
    csv << real(z.real()) << ',' << real(z.imag()) << ',' << real(est.value.real()) << ','
        << real(est.value.imag()) << ',' << real(est.err_est) << '\n';
    rows.push_back({{"z", cjson(z)},
                    {"value", cjson(est.value)},
                    {"err_est", est.err_est},
                    {"converged", est.converged}});
  }
  result.csv = csv.str();
  result.summary = {{"command", "transform"}, {"func", format_spec(spec)}, {"kind", src.kind},
                    {"rows", rows}};
  return result;
}

Contour pick_contour(const TransformExpr& t, const std::string& shape, double delta,
                     std::optional<double> height) {
  if (shape == "rect") {
    return rectangle_for(t, delta, height.value_or(default_half_height(t, delta)));
  }
  if (shape == "line") return bromwich_for(t, delta, height.value_or(kDefaultLineHalfHeight));
  usage_error("--contour is rect or line");
  return Contour::bromwich(0.0, 1.0, 1.0);
}

CommandOutput run_invert(const SourceOptions& src, const std::vector<double>& args,
                         const std::string& shape, double delta, std::optional<double> height,
                         const QuadratureSpec& q) {
  const InverseKind kind = inverse_kind_from_name(src.kind);
  const TransformExpr t = resolve_transform(src, kind);
  const Contour c = pick_contour(t, shape, delta, height);

  CommandOutput result;
  std::ostringstream csv;
  csv << "arg,value,imag\n";
  json rows = json::array();
  const SampledContour sampled = sample_contour(t, c, q);
  for (double arg : args) {
    const cplx v = inverse_eval(sampled, kind, arg);
    csv << real(arg) << ',' << real(v.real()) << ',' << real(v.imag()) << '\n';
    rows.push_back({{"arg", arg}, {"value", cjson(v)}});
  }
  result.csv = csv.str();
  result.summary = {{"command", "invert"},
                    {"transform", json::parse(transform_to_json(t))},
                    {"contour", json::parse(contour_to_json(c))},
                    {"rows", rows}};
  return result;
}

CommandOutput run_roundtrip(const SourceOptions& src, const std::vector<double>& args,
                            const std::string& shape, double delta, std::optional<double> height,
                            std::optional<double> tol, const QuadratureSpec& q) {
  if (src.func.empty()) usage_error("roundtrip needs --func");
  if (shape != "rect" && shape != "line") usage_error("--contour is rect or line");
  RoundTripOptions opts;
  opts.use_rectangle = shape == "rect";
  opts.delta = delta;
  opts.half_height = height;
  opts.tolerance = tol;
  const RoundTripReport report =
      roundtrip(parse_spec_string(src.func), inverse_kind_from_name(src.kind), args, opts, q);

  CommandOutput result;
  result.csv = roundtrip_csv(report);
  result.failed = !report.passed;
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"arg", r.arg},
                    {"truth", r.truth},
                    {"recovered", r.recovered},
                    {"abs_err", r.abs_err},
                    {"rel_err", r.rel_err}});
  }
  result.summary = {{"command", "roundtrip"},
                    {"func", format_spec(report.spec)},
                    {"kind", inverse_kind_name(report.kind)},
                    {"contour", json::parse(contour_to_json(report.contour))},
                    {"max_abs_err", report.max_abs_err},
                    {"max_rel_err", report.max_rel_err},
                    {"tolerance", report.tolerance},
                    {"passed", report.passed},
                    {"wall_time_s", report.wall_time.count()},
                    {"rows", rows}};
  return result;
}

CommandOutput run_delta_check(const std::string& func, double x, const std::string& t_list,
                              std::optional<double> lo, std::optional<double> hi,
                              std::optional<double> tol, const QuadratureSpec& q) {
  if (func.empty()) usage_error("delta-check needs --func");
  const FunctionSpec g = parse_spec_string(func);
  std::optional<std::pair<double, double>> interval;
  if (lo || hi) {
    const double default_hi = g.is_power_family() ? 1.0 : kInf;
    interval = std::pair{lo.value_or(0.0), hi.value_or(default_hi)};
  }
  const ConvergenceTable table = delta_check(x, g, parse_real_list(t_list), q, interval);

  CommandOutput result;
  std::ostringstream csv;
  csv << "T,value,abs_err\n";
  for (std::size_t i = 0; i < table.samples.size(); ++i) {
    csv << real(table.samples[i]) << ',' << real(table.values[i]) << ',' << real(table.errors[i])
        << '\n';
  }
  result.csv = csv.str();
  result.failed = tol.has_value() && table.final_error() > *tol;
  result.summary = {{"command", "delta-check"}, {"func", format_spec(g)},
                    {"x", x},                   {"target", table.target},
                    {"T", table.samples},       {"values", table.values},
                    {"errors", table.errors},   {"deltas", table.deltas},
                    {"final_error", table.final_error()}};
  return result;
}

CommandOutput run_sweep(const SourceOptions& src, double arg, const std::string& deltas,
                        const std::string& heights, bool relative, std::optional<double> tol,
                        const QuadratureSpec& q) {
  const InverseKind kind = inverse_kind_from_name(src.kind);
  const TransformExpr t = resolve_transform(src, kind);
  const SweepTable table =
      invariance_sweep(t, kind, arg, parse_real_list(deltas), parse_real_list(heights), q,
                       relative ? HeightScale::RelativeToPoleBox : HeightScale::Absolute);

  CommandOutput result;
  std::ostringstream csv;
  csv << "delta,T,re_val,im_val\n";
  json rows = json::array();
  for (const auto& p : table.points) {
    csv << real(p.delta) << ',' << real(p.half_height) << ',' << real(p.value.real()) << ','
        << real(p.value.imag()) << '\n';
    rows.push_back({{"delta", p.delta}, {"T", p.half_height}, {"value", cjson(p.value)}});
  }
  result.csv = csv.str();
  result.failed = table.spread > tol.value_or(1e-8);
  result.summary = {{"command", "sweep"}, {"arg", arg}, {"spread", table.spread}, {"rows", rows}};
  if (table.oracle) result.summary["oracle"] = *table.oracle;
  return result;
}

CommandOutput run_cauchy(const SourceOptions& src, const std::vector<std::string>& zs,
                         double delta, std::optional<double> height, std::optional<double> tol,
                         const QuadratureSpec& q) {
  const TransformExpr t = resolve_transform(src, inverse_kind_from_name(src.kind));
  const Contour rect = rectangle_for(t, delta, height.value_or(default_half_height(t, delta)));
  if (zs.empty()) usage_error("cauchy-check needs at least one --z");
  std::vector<cplx> points;
  for (const auto& z : zs) points.push_back(parse_complex(z));
  const auto rows = cauchy_sweep(t, rect, points, q);

  CommandOutput result;
  std::ostringstream csv;
  csv << "re_z,im_z,re_val,im_val,re_direct,im_direct,rel_err\n";
  double worst = 0.0;
  for (const auto& r : rows) {
    csv << real(r.z.real()) << ',' << real(r.z.imag()) << ',' << real(r.reproduced.real()) << ','
        << real(r.reproduced.imag()) << ',' << real(r.direct.real()) << ','
        << real(r.direct.imag()) << ',' << real(r.rel_err) << '\n';
    worst = std::max(worst, r.rel_err);
  }
  result.csv = csv.str();
  result.failed = worst > tol.value_or(1e-8);
  result.summary = {{"command", "cauchy-check"},
                    {"contour", json::parse(contour_to_json(rect))},
                    {"max_rel_err", worst}};
  return result;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laplace, Mellin and Mellin-moment transforms with rectangular-contour inverses",
               "rectinv"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  GlobalOptions g;
  app.add_flag("--json", g.json_output, "Emit a JSON document instead of CSV");
  app.add_option("--out", g.out_path, "Write output to a file instead of stdout");
  app.add_option("--tol", g.tol, "Pass/fail tolerance");
  app.add_option("--quad", g.quad_json, "Quadrature settings as JSON");
  app.add_flag("--strict", g.strict, "Exit 3 on unconverged or failed results");
  app.add_option("--config", g.config_path, "JSON file mirroring the flags");

  SourceOptions src;
  std::vector<std::string> zs;
  std::vector<std::string> xs;
  std::string grid;
  std::string shape = "rect";
  double delta = kDefaultDelta;
  std::optional<double> height;
  bool analytic = false;
  double x = 0.0;
  std::string t_list = "20,40,80";
  std::string deltas = "0.1,0.5,1";
  std::string heights = "1,2,4";
  bool relative = false;
  std::optional<double> lo;
  std::optional<double> hi;

  auto add_source = [&](CLI::App* cmd, bool with_poles) {
    cmd->add_option("--func", src.func, "Catalog function, e.g. exp:gamma=1");
    if (with_poles) cmd->add_option("--poles", src.poles, "Rational transform [[re,im,res_re,res_im],...]");
    cmd->add_option("--kind", src.kind, "Transform or kernel kind");
  };

  auto* transform = app.add_subcommand("transform", "Evaluate a direct transform");
  add_source(transform, false);
  transform->add_option("--z", zs, "Complex point a+bi (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  transform->add_flag("--analytic", analytic, "Use the closed form");

  auto* invert = app.add_subcommand("invert", "Evaluate an inverse transform on a contour");
  add_source(invert, true);
  invert->add_option("--x", xs, "Argument (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  invert->add_option("--grid", grid, "start:stop:count");
  invert->add_option("--contour", shape, "rect or line");
  invert->add_option("--delta", delta, "Contour offset from the poles");
  invert->add_option("--T", height, "Half-height of the contour");

  auto* rt = app.add_subcommand("roundtrip", "Transform, invert and compare with the function");
  add_source(rt, false);
  rt->add_option("--x", xs, "Argument (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  rt->add_option("--grid", grid, "start:stop:count");
  rt->add_option("--contour", shape, "rect or line");
  rt->add_option("--delta", delta, "Contour offset from the poles");
  rt->add_option("--T", height, "Half-height of the contour");

  auto* dc = app.add_subcommand("delta-check", "Dirichlet-kernel sifting of a function");
  dc->add_option("--func", src.func, "Catalog function");
  dc->add_option("--x", x, "Sifting point");
  dc->add_option("--T", t_list, "Comma-separated increasing truncations");
  dc->add_option("--lo", lo, "Lower end of the integration interval");
  dc->add_option("--hi", hi, "Upper end of the integration interval");

  auto* sweep = app.add_subcommand("sweep", "Rectangle invariance over delta and T");
  add_source(sweep, true);
  sweep->add_option("--x", x, "Argument");
  sweep->add_option("--deltas", deltas, "Comma-separated deltas");
  sweep->add_option("--T", heights, "Comma-separated half-heights");
  sweep->add_flag("--relative", relative, "Scale half-heights by the pole box plus delta");

  auto* cauchy = app.add_subcommand("cauchy-check", "Cauchy reproduction of the transform");
  add_source(cauchy, true);
  cauchy->add_option("--z", zs, "Complex point right of the rectangle (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  cauchy->add_option("--delta", delta, "Contour offset from the poles");
  cauchy->add_option("--T", height, "Half-height of the rectangle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (!g.config_path.empty()) {
      std::ifstream in(g.config_path);
      if (!in) usage_error("cannot read config file " + g.config_path);
      json config;
      try {
        config = json::parse(in);
      } catch (const json::exception& e) {
        usage_error(std::string("config is not valid JSON: ") + e.what());
      }
      if (!config.is_object()) usage_error("config must be a JSON object");
      apply_config(config, app, active);
    }

    const QuadratureSpec q = g.quad_json.empty() ? QuadratureSpec{} : quad_from_json(g.quad_json);

    CommandOutput result;
    const std::string name = active->get_name();
    if (name == "transform") {
      result = run_transform(src, zs, analytic, q);
    } else if (name == "invert") {
      result = run_invert(src, resolve_args(xs, grid), shape, delta, height, q);
    } else if (name == "roundtrip") {
      result = run_roundtrip(src, resolve_args(xs, grid), shape, delta, height, g.tol, q);
    } else if (name == "delta-check") {
      result = run_delta_check(src.func, x, t_list, lo, hi, g.tol, q);
    } else if (name == "sweep") {
      result = run_sweep(src, x, deltas, heights, relative, g.tol, q);
    } else {
      result = run_cauchy(src, zs, delta, height, g.tol, q);
    }

    const std::string payload = g.json_output ? result.summary.dump(2) + "\n" : result.csv;
    if (g.out_path.empty()) {
      out << payload;
    } else {
      std::ofstream file(g.out_path);
      if (!file) usage_error("cannot write " + g.out_path);
      file << payload;
    }
    if (g.strict && result.failed) {
      err << "rectinv: result failed its tolerance or did not converge\n";
      return kExitConvergence;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "rectinv: " << e.what() << '\n';
    const bool numeric = e.code() == ErrorCode::TailDivergence ||
                         e.code() == ErrorCode::NonFiniteIntegrand;
    return numeric ? kExitConvergence : kExitUsage;
  }
}

}  // namespace rectinv
