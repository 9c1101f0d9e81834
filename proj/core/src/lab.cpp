#include "galab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "galab/error.hpp"
#include "galab/operators.hpp"

namespace galab {

std::string ScenarioReport::text() const {
  std::ostringstream os;
  os << "scenario " << name << ' ' << parameters.dump() << '\n';
  std::size_t width = 0;
  for (const auto& [k, v] : findings) width = std::max(width, k.size());
  for (const auto& [k, v] : findings) os << "  " << k << std::string(width - k.size(), ' ') << "  " << v << '\n';
  os << "verdict: " << verdict << '\n';
  return os.str();
}

Json ScenarioReport::to_json() const {
  Json f = Json::object();
  for (const auto& [k, v] : findings) f[k] = v;
  return Json{{"scenario", name}, {"parameters", parameters}, {"findings", std::move(f)}, {"verdict", verdict},
              {"payload", payload}};
}

namespace {

mpq_class exact_sup(const PointFunction<ExactComplex>& h) {
  mpq_class m(0);
  for (const auto& [x, v] : h) m = std::max({m, mpq_class(abs(v.re)), mpq_class(abs(v.im))});
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

LpFindings lp_findings(int n) {
  if (n < 1) throw UsageError("scenario lp needs N >= 1");
  const GroupSpec z = GroupSpec::lattice(1);
  ExactElement f(z);
  f.add_term({0}, ExactComplex(1L));
  f.add_term({1}, ExactComplex(-1L));

  LpFindings out;
  out.n = n;

  // Kernel: constants are annihilated on the whole window.
  const Window ball = z.ball(n);
  const Window in = input_window(z, ball, f.support());
  for (long c : {1L, 5L}) {
    PointFunction<ExactComplex> g;
    for (const auto& x : in) g.emplace(x, ExactComplex(c));
    const mpq_class r = exact_sup(rho_apply(f, g, ball));
    (c == 1 ? out.kernel_residual_one : out.kernel_residual_five) = r;
  }

  // a(x) = a(x+1) + [x = 0] downward from a(N) = t; alpha is the t = 0 part,
  // and each a(x) carries t with coefficient 1.
  std::vector<mpq_class> alpha(static_cast<std::size_t>(2 * n + 1));
  std::vector<mpq_class> beta(alpha.size());
  const auto at = [n](std::int64_t x) { return static_cast<std::size_t>(x + n); };
  alpha[at(n)] = 0;
  beta[at(n)] = 1;
  for (std::int64_t x = n - 1; x >= -n; --x) {
    alpha[at(x)] = alpha[at(x + 1)] + (x == 0 ? 1 : 0);
    beta[at(x)] = beta[at(x + 1)];
  }
  out.gap = alpha[at(-n)] - alpha[at(n)];
  out.gap_t_coefficient = beta[at(-n)] - beta[at(n)];

  // Independent check of the particular solution through rho_f.
  std::vector<Element> eqs;
  for (std::int64_t x = -n; x < n; ++x) eqs.push_back({x});
  const Window eq_window(std::move(eqs));
  PointFunction<ExactComplex> a;
  for (std::int64_t x = -n; x <= n; ++x) a.emplace(Element{x}, ExactComplex(alpha[at(x)]));
  auto image = rho_apply(f, a, eq_window);
  image.at(Element{0}) -= ExactComplex(1L);
  out.system_residual = exact_sup(image);

  // The endpoints differ by the gap for every t, so one of them is at least |gap| / 2.
  out.min_endpoint_sup = abs(out.gap) / 2;
  return out;
}

ScenarioReport scenario_lp(int n) {
  const LpFindings r = lp_findings(n);
  ScenarioReport rep;
  rep.name = "lp";
  rep.parameters = Json{{"N", n}};
  rep.findings = {
      {"kernel_residual_const_1", to_string(r.kernel_residual_one)},
      {"kernel_residual_const_5", to_string(r.kernel_residual_five)},
      {"telescoping_system_residual", to_string(r.system_residual)},
      {"gap_a(-N)-a(N)", to_string(r.gap)},
      {"gap_dependence_on_free_parameter", to_string(r.gap_t_coefficient)},
      {"min_t_max_endpoint", to_string(r.min_endpoint_sup)},
  };
  const bool witnessed = r.kernel_residual_one == 0 && r.kernel_residual_five == 0 && r.system_residual == 0 &&
                         r.gap == 1 && r.gap_t_coefficient == 0;
  rep.verdict = witnessed ? "rho_f has nonzero kernel (constants) and no solution of rho_f(a) = delta_0 "
                            "decays at both ends: a(-N) - a(N) = 1 for every solution"
                          : "counterexample NOT reproduced";
  rep.payload = Json{{"N", n},
                     {"kernel_residual", to_string(std::max(r.kernel_residual_one, r.kernel_residual_five))},
                     {"system_residual", to_string(r.system_residual)},
                     {"gap", to_string(r.gap)},
                     {"gap_t_coefficient", to_string(r.gap_t_coefficient)},
                     {"min_endpoint_sup", to_string(r.min_endpoint_sup)},
                     {"reproduced", witnessed}};
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// u * exp(l) with |u| = 1, or zero when l = -inf. Coefficients of r^|n| fall
// below the smallest double long before |n| = 1024, so ratios are formed here.
struct LogCoeff {
  double l = -std::numeric_limits<double>::infinity();
  Complex u{};

  static LogCoeff of(const Complex& c) {
    const double m = std::abs(c);
    if (m == 0.0) return {};
    return {std::log(m), c / m};
  }
  bool zero() const { return std::isinf(l) && l < 0; }
  Complex value() const { return zero() ? Complex{} : u * std::exp(l); }
  friend LogCoeff operator*(const LogCoeff& a, const LogCoeff& b) {
    if (a.zero() || b.zero()) return {};
    return {a.l + b.l, a.u * b.u};
  }
  friend LogCoeff operator/(const LogCoeff& a, const LogCoeff& b) {
    if (a.zero()) return {};
    return {a.l - b.l, a.u / b.u};
  }
};

double distance(const LogCoeff& a, const LogCoeff& b) {
  if (a.zero() && b.zero()) return 0.0;
  const double m = std::max(a.l, b.l);
  const Complex da = a.zero() ? Complex{} : a.u * std::exp(a.l - m);
  const Complex db = b.zero() ? Complex{} : b.u * std::exp(b.l - m);
  return std::abs(da - db) * std::exp(m);
}

}  // namespace

CoefficientTable square_wave(int degree) {
  CoefficientTable p;
  for (int k = 1; k <= degree; k += 2) {
    const Complex c(0.0, -2.0 / (std::numbers::pi * k));
    p[k] = c;
    p[-k] = -c;
  }
  return p;
}

TorusFindings torus_findings(const TorusOptions& opts) {
  if (opts.n < 4) throw UsageError("scenario torus needs N >= 4");
  const std::int64_t n = opts.n;
  std::map<std::int64_t, LogCoeff> fhat;
  if (opts.coefficients) {
    for (std::int64_t k = -n; k <= n; ++k) {
      auto it = opts.coefficients->find(k);
      if (it == opts.coefficients->end() || it->second == Complex{})
        throw UsageError("coefficient table must be nonzero at every |n| <= N (missing n = " + std::to_string(k) + ")");
      fhat[k] = LogCoeff::of(it->second);
    }
  } else {
    if (!(opts.r > 0.0 && opts.r < 1.0)) throw UsageError("decay ratio r must lie in (0, 1)");
    const double lr = std::log(opts.r);
    for (std::int64_t k = -n; k <= n; ++k) fhat[k] = {static_cast<double>(std::abs(k)) * lr, Complex(1.0, 0.0)};
  }

  TorusFindings out;
  out.n = opts.n;

  // Dense range: the preimage of a trigonometric polynomial is coefficientwise division.
  const CoefficientTable target = opts.target ? *opts.target : square_wave(opts.target_degree);
  for (const auto& [k, c] : target) {
    if (c == Complex{}) continue;
    if (std::abs(k) > n) throw UsageError("target degree exceeds N");
    ++out.target_terms;
    const LogCoeff p = LogCoeff::of(c);
    const LogCoeff h = p / fhat.at(k);
    out.preimage[k] = h.value();
    out.dense_residual = std::max(out.dense_residual, distance(fhat.at(k) * h, p));
  }

  // Target f itself: the multiplier equation forces h^(n) = 1 wherever f^(n) != 0.
  for (const auto& [k, fk] : fhat) {
    const Complex h = (fk / fk).value();
    ++out.self_checked;
    if (h != Complex(1.0, 0.0)) ++out.self_mismatches;
    out.self_max_deviation = std::max(out.self_max_deviation, std::abs(h - 1.0));
    const double m = std::abs(h);
    if (2 * std::abs(k) >= n)
      out.tail_max = std::max(out.tail_max, m);
    else
      out.head_max = std::max(out.head_max, m);
  }
  out.non_decay = out.tail_max >= 0.5 * out.head_max && out.tail_max > 0.0;
  return out;
}

ScenarioReport scenario_torus(const TorusOptions& opts) {
  const TorusFindings r = torus_findings(opts);
  ScenarioReport rep;
  rep.name = "torus";
  rep.parameters = Json{{"N", opts.n}};
  if (opts.coefficients)
    rep.parameters["family"] = "table";
  else
    rep.parameters["r"] = opts.r;
  rep.parameters["target"] = opts.target ? "table" : "square_wave";
  if (!opts.target) rep.parameters["target_degree"] = opts.target_degree;

  rep.findings = {
      {"target_terms", std::to_string(r.target_terms)},
      {"dense_range_residual", fmt(r.dense_residual)},
      {"self_target_checked", std::to_string(r.self_checked)},
      {"self_target_h_not_1", std::to_string(r.self_mismatches)},
      {"self_target_max_|h-1|", fmt(r.self_max_deviation)},
      {"max_|h|_tail(N/2<=|n|<=N)", fmt(r.tail_max)},
      {"max_|h|_head(|n|<N/2)", fmt(r.head_max)},
      {"non_decay_flag", r.non_decay ? "raised" : "not raised"},
  };
  rep.verdict = r.non_decay ? "range is dense (exact preimages of trigonometric polynomials) but f is not in the "
                              "range: h^(n) = 1 does not tend to zero"
                            : "non-decay not observed";

  Json pre = Json::array();
  for (const auto& [k, c] : r.preimage) pre.push_back(Json{{"n", k}, {"re", c.real()}, {"im", c.imag()}});
  rep.payload = Json{{"N", opts.n},
                     {"dense_residual", r.dense_residual},
                     {"preimage", std::move(pre)},
                     {"self_checked", r.self_checked},
                     {"self_mismatches", r.self_mismatches},
                     {"self_max_deviation", r.self_max_deviation},
                     {"tail_max", r.tail_max},
                     {"head_max", r.head_max},
                     {"non_decay", r.non_decay}};
  return rep;
}

}  // namespace galab
