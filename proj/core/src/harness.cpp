#include "rectinv/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "format.hpp"
#include "json.hpp"
#include "rectinv/error.hpp"
#include "rectinv/oracle.hpp"

namespace rectinv {

namespace {

// Minimal cursor over the input that reports 1-based columns.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  std::size_t column() const { return pos_ + 1; }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])))) ++pos_;
    if (start == pos_) throw ParseError(column(), "expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError(column(), std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double real() {
    skip_ws();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || !std::isfinite(v)) {
      throw ParseError(column(), "expected a decimal real");
    }
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

double parse_full_real(std::string_view text) {
  Scanner s(text);
  const double v = s.real();
  if (!s.done()) throw ParseError(s.column(), "unexpected trailing input");
  return v;
}

// Runs fn(i) for i in [0, n) across hardware threads; the first exception
// thrown by any worker is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += workers) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double rel_error(double abs_err, double truth) {
  return truth == 0.0 ? abs_err : abs_err / std::abs(truth);
}

}  // namespace

FunctionSpec parse_spec_string(std::string_view text) {
  Scanner s(text);
  const std::size_t name_col = (s.skip_ws(), s.column());
  const std::string name = s.word();

  FunctionKind kind;
  std::vector<std::string> keys;
  if (name == "exp") {
    kind = FunctionKind::Exp;
    keys = {"gamma"};
  } else if (name == "power") {
    kind = FunctionKind::Power;
    keys = {"gamma"};
  } else if (name == "mixedexp") {
    kind = FunctionKind::MixedExp;
    keys = {"g1", "g2"};
  } else if (name == "mixedpower") {
    kind = FunctionKind::MixedPower;
    keys = {"g1", "g2"};
  } else if (name == "expminusx") {
    kind = FunctionKind::ExpMinusX;
  } else {
    throw ParseError(name_col, "unknown function '" + name + "'");
  }

  std::vector<std::optional<double>> values(keys.size());
  if (!keys.empty()) {
    s.expect(':');
    do {
      s.skip_ws();
      const std::size_t key_col = s.column();
      const std::string key = s.word();
      auto it = std::find(keys.begin(), keys.end(), key);
      if (it == keys.end()) throw ParseError(key_col, "unexpected parameter '" + key + "'");
      auto& slot = values[static_cast<std::size_t>(it - keys.begin())];
      if (slot) throw ParseError(key_col, "duplicate parameter '" + key + "'");
      s.expect('=');
      slot = s.real();
    } while (s.accept(','));
  }
  if (!s.done()) throw ParseError(s.column(), "unexpected trailing input");

  std::vector<double> params;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!values[i]) throw ParseError(s.column(), "missing parameter '" + keys[i] + "'");
    params.push_back(*values[i]);
  }
  return {kind, std::move(params)};
}

cplx parse_complex(std::string_view text) {
  if (text.empty()) throw ParseError(1, "expected a complex literal");
  if (text.back() != 'i') return {parse_full_real(text), 0.0};
  // Split at the last sign that is neither leading nor part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = text.size() - 1; i > 0; --i) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string_view body = text.substr(0, text.size() - 1);
  if (split == std::string_view::npos) return {0.0, parse_full_real(body)};
  const double re = parse_full_real(text.substr(0, split));
  std::string_view im_text = body.substr(split);
  double im = 0.0;
  try {
    im = parse_full_real(im_text);
  } catch (const ParseError& e) {
    throw ParseError(split + e.column(), "bad imaginary part");
  }
  return {re, im};
}

std::vector<double> parse_grid(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) throw ParseError(text.size() + 1, "grid is start:stop:count");
  const double start = parse_full_real(text.substr(0, first));
  const double stop = parse_full_real(text.substr(first + 1, second - first - 1));
  const auto count_text = text.substr(second + 1);
  long count = 0;
  auto res = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (res.ec != std::errc() || res.ptr != count_text.data() + count_text.size() || count < 1) {
    throw ParseError(second + 2, "grid count must be a positive integer");
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] =
        count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1);
  }
  if (count > 1) grid.back() = stop;
  return grid;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
    out.push_back(parse_full_real(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

TransformExpr parse_pole_list(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, "pole list must be JSON [[re, im, res_re, res_im], ...]");
  }
  if (!j.is_array()) throw ParseError(1, "pole list must be a JSON array");
  std::vector<Pole> poles;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 4 ||
        !std::all_of(entry.begin(), entry.end(), [](const auto& v) { return v.is_number(); })) {
      throw ParseError(1, "each pole is [re, im, res_re, res_im]");
    }
    poles.push_back({{entry[0].get<double>(), entry[1].get<double>()},
                     {entry[2].get<double>(), entry[3].get<double>()}});
  }
  return TransformExpr::rational(std::move(poles));
}

TransformExpr transform_for(const FunctionSpec& spec, InverseKind kind) {
  TransformKind tk = TransformKind::Laplace;
  if (kind == InverseKind::MellinKernel) {
    tk = spec.is_power_family() ? TransformKind::Moment : TransformKind::Mellin;
  }
  try {
    return analytic_transform(spec, tk);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoClosedForm) throw;
  }
  return TransformExpr::numeric(spec, tk);
}

RoundTripReport roundtrip(const FunctionSpec& spec, InverseKind kind, const std::vector<double>& args,
                          const RoundTripOptions& opts, const QuadratureSpec& q) {
  if (args.empty()) throw Error(ErrorCode::EmptyGrid, "round trip needs at least one argument");
  const auto started = std::chrono::steady_clock::now();
  const TransformExpr t = transform_for(spec, kind);
  const Contour contour =
      opts.use_rectangle
          ? rectangle_for(t, opts.delta, opts.half_height.value_or(default_half_height(t, opts.delta)))
          : bromwich_for(t, opts.delta, opts.half_height.value_or(kDefaultLineHalfHeight));

  SampledContour sampled;
  sampled.nodes = discretize(contour, q);
  sampled.values.resize(sampled.nodes.size());
  parallel_for(sampled.nodes.size(), [&](std::size_t i) {
    sampled.values[i] = eval_transform(t, sampled.nodes[i].z, q);
  });

  std::vector<RoundTripRow> rows(args.size());
  parallel_for(args.size(), [&](std::size_t i) {
    const double arg = args[i];
    const double truth = eval(spec, arg);
    const double recovered = inverse_eval(sampled, kind, arg).real();
    const double abs_err = std::abs(recovered - truth);
    rows[i] = {arg, truth, recovered, abs_err, rel_error(abs_err, truth)};
  });

  RoundTripReport report{spec, kind, contour, std::move(rows)};
  for (const auto& r : report.rows) {
    report.max_abs_err = std::max(report.max_abs_err, r.abs_err);
    report.max_rel_err = std::max(report.max_rel_err, r.rel_err);
  }
  report.tolerance =
      opts.tolerance.value_or(opts.use_rectangle ? kRectangleTolerance : kLineTolerance);
  report.passed = report.max_rel_err <= report.tolerance;
  report.wall_time = std::chrono::steady_clock::now() - started;
  return report;
}

double sine_integral(double s, const QuadratureSpec& q) {
  const double sign = s < 0.0 ? -1.0 : 1.0;
  const Estimate est = integrate_finite(
      [](double u) { return cplx(u == 0.0 ? 1.0 : std::sin(u) / u); }, 0.0, std::abs(s), q);
  return sign * est.value.real();
}

ConvergenceTable delta_check(double x, const FunctionSpec& g, const std::vector<double>& t_values,
                             const QuadratureSpec& q,
                             std::optional<std::pair<double, double>> interval) {
  for (std::size_t i = 1; i < t_values.size(); ++i) {
    if (!(t_values[i - 1] < t_values[i])) {
      throw Error(ErrorCode::InvalidArgument, "T values must be strictly increasing");
    }
  }
  const auto [lo, hi] = interval.value_or(
      g.is_power_family() ? std::pair{0.0, 1.0} : std::pair{0.0, kInf});
  if (!(lo < x && x < hi)) {
    throw Error(ErrorCode::InvalidArgument, "x must be interior to the integration interval");
  }

  // Limit of g at +inf, split off so the remaining integrand decays.
  double at_infinity = 0.0;
  if (std::isinf(hi)) {
    if (g.is_power_family()) {
      throw Error(ErrorCode::DomainError, "power-family functions grow on a half-line");
    }
    const GrowthBounds b = growth_bounds(g);
    if (g.kind() == FunctionKind::Exp && g.params()[0] == 0.0) {
      at_infinity = 1.0;
    } else if (!(b.right_index < 0.0)) {
      throw Error(ErrorCode::DomainError, format_spec(g) + " does not decay on the half-line");
    }
  }

  ConvergenceTable table;
  table.parameter = "T";
  table.target = eval(g, x);
  for (double t : t_values) {
    auto integrand = [&](double y) {
      const double u = x - y;
      const double dirichlet =
          std::abs(t * u) < 1e-8 ? t / std::numbers::pi : std::sin(t * u) / (std::numbers::pi * u);
      return cplx((eval(g, y) - at_infinity) * dirichlet);
    };
    double value = integrate_finite(integrand, lo, x, q).value.real();
    value += std::isinf(hi) ? integrate_halfline(integrand, x, q).value.real()
                            : integrate_finite(integrand, x, hi, q).value.real();
    if (at_infinity != 0.0) {
      value += at_infinity * (0.5 + sine_integral(t * (x - lo), q) / std::numbers::pi);
    }
    if (!table.values.empty()) table.deltas.push_back(value - table.values.back());
    table.samples.push_back(t);
    table.values.push_back(value);
    table.errors.push_back(std::abs(value - table.target));
  }
  return table;
}

SweepTable invariance_sweep(const TransformExpr& t, InverseKind kind, double arg,
                            const std::vector<double>& deltas, const std::vector<double>& heights,
                            const QuadratureSpec& q, HeightScale scale) {
  const PoleBox box = pole_box(t);
  SweepTable table;
  for (double delta : deltas) {
    for (double h : heights) {
      const double height = scale == HeightScale::Absolute ? h : h * (box.im_max + delta);
      table.points.push_back({delta, height, {}});
    }
  }
  parallel_for(table.points.size(), [&](std::size_t i) {
    auto& p = table.points[i];
    const Contour rect = rectangle_for(t, p.delta, p.half_height);
    p.half_height = rect.half_height();
    p.value = inverse_eval(t, kind, rect, arg, q);
  });
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    for (std::size_t j = i + 1; j < table.points.size(); ++j) {
      table.spread = std::max(table.spread, std::abs(table.points[i].value - table.points[j].value));
    }
  }
  if (kind == InverseKind::LaplaceKernel || arg > 0.0) table.oracle = residue_inverse(t, kind, arg);
  return table;
}

std::vector<CauchyRow> cauchy_sweep(const TransformExpr& t, const Contour& rect,
                                    const std::vector<cplx>& zs, const QuadratureSpec& q) {
  std::vector<CauchyRow> rows(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    const cplx reproduced = cauchy_reproduction(t, rect, zs[i], q);
    const cplx direct = eval_transform(t, zs[i], q);
    rows[i] = {zs[i], reproduced, direct, std::abs(reproduced - direct) / std::abs(direct)};
  });
  return rows;
}

std::string format_real(double v) { return detail::shortest(v); }

std::string roundtrip_csv(const RoundTripReport& report) {
  std::ostringstream out;
  out << "arg,truth,recovered,abs_err,rel_err\n";
  for (const auto& r : report.rows) {
    out << format_real(r.arg) << ',' << format_real(r.truth) << ',' << format_real(r.recovered)
        << ',' << format_real(r.abs_err) << ',' << format_real(r.rel_err) << '\n';
  }
  return out.str();
}

}  // namespace rectinv
