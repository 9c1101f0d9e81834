#include "galab/character.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "galab/error.hpp"

namespace galab {

namespace {

struct Constraints {
  Eigen::MatrixXd a;  // one row per ball element x != e
  Eigen::VectorXd b;  // log w(x)
  std::vector<Element> points;
};

// Damped Newton on phi(u) given callbacks; shared by both barrier stages.
// Returns false if the iteration did not converge.
template <class Eval, class Feasible>
bool newton_minimize(Eigen::VectorXd& u, Eval&& eval, Feasible&& feasible, int max_iter = 200) {
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    const double f0 = eval(u, &grad, &hess);
    const Eigen::VectorXd step = hess.ldlt().solve(-grad);
    const double decrement = -grad.dot(step);
    if (!std::isfinite(decrement)) return false;
    if (decrement / 2.0 < 1e-14) return true;
    double t = 1.0;
    while (t > 1e-16) {
      const Eigen::VectorXd trial = u + t * step;
      if (feasible(trial) && eval(trial, nullptr, nullptr) <= f0 - 0.25 * t * decrement) {
        u = trial;
        break;
      }
      t *= 0.5;
    }
    if (t <= 1e-16) return true;  // no further progress at working precision
  }
  return false;
}

// Phase I: minimize t subject to <a_i, c> - t <= b_i. Returns (c, t).
std::pair<Eigen::VectorXd, double> phase_one(const Constraints& cons, double* lower_bound) {
  const Eigen::Index d = cons.a.cols();
  const Eigen::Index m = cons.a.rows();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(d + 1);
  u[d] = (-cons.b).maxCoeff() + 1.0;

  const auto slack = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return (cons.b.array() + v[d]).matrix() - cons.a * v.head(d);
  };
  const auto feasible = [&](const Eigen::VectorXd& v) { return slack(v).minCoeff() > 0.0; };

  const double scale = 1.0 + cons.b.cwiseAbs().maxCoeff();
  double tau = 1.0;
  while (true) {
    const auto eval = [&](const Eigen::VectorXd& v, Eigen::VectorXd* grad, Eigen::MatrixXd* hess) {
      const Eigen::VectorXd s = slack(v);
      if (grad) {
        const Eigen::VectorXd inv = s.cwiseInverse();
        grad->resize(d + 1);
        grad->head(d) = cons.a.transpose() * inv;
        (*grad)[d] = tau - inv.sum();
        Eigen::MatrixXd q(m, d + 1);
        q.leftCols(d) = -cons.a;
        q.col(d).setOnes();
        const Eigen::VectorXd w = inv.cwiseAbs2();
        *hess = q.transpose() * w.asDiagonal() * q;
      }
      return tau * v[d] - s.array().log().sum();
    };
    newton_minimize(u, eval, feasible);
    const double gap = static_cast<double>(m) / tau;
    *lower_bound = u[d] - gap;
    if (u[d] < 0.0 || *lower_bound > 0.0 || gap < 1e-13 * scale) break;
    tau *= 10.0;
  }
  return {u.head(d), u[d]};
}

Eigen::VectorXd analytic_center(const Constraints& cons, Eigen::VectorXd c) {
  const auto slack = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return cons.b - cons.a * v; };
  const auto feasible = [&](const Eigen::VectorXd& v) { return slack(v).minCoeff() > 0.0; };
  const auto eval = [&](const Eigen::VectorXd& v, Eigen::VectorXd* grad, Eigen::MatrixXd* hess) {
    const Eigen::VectorXd s = slack(v);
    if (grad) {
      const Eigen::VectorXd inv = s.cwiseInverse();
      *grad = cons.a.transpose() * inv;
      *hess = cons.a.transpose() * inv.cwiseAbs2().asDiagonal() * cons.a;
    }
    return -s.array().log().sum();
  };
  newton_minimize(c, eval, feasible);
  return c;
}

double max_violation(const Constraints& cons, const std::vector<double>& c) {
  const Eigen::Map<const Eigen::VectorXd> cv(c.data(), static_cast<Eigen::Index>(c.size()));
  return (cons.a * cv - cons.b).maxCoeff();
}

}  // namespace

DominationResult dominate_character(const Weight& w, int radius) {
  const GroupSpec& g = w.group();
  if (g.kind() != GroupKind::lattice)
    throw UsageError("character domination is constructive on Z^d only");
  if (radius < 1) throw UsageError("domination radius must be >= 1");

  DominationResult out;
  out.radius = radius;
  const int d = g.rank();

  const Element e = g.identity();
  if (w(e) < 1.0) {
    out.feasible = false;
    out.certificate = {e};
    out.method = "identity constraint";
    out.max_violation = -std::log(w(e));
    return out;
  }

  const Window ball = g.ball(radius);
  Constraints cons;
  cons.a.resize(static_cast<Eigen::Index>(ball.size() - 1), d);
  cons.b.resize(static_cast<Eigen::Index>(ball.size() - 1));
  Eigen::Index row = 0;
  for (const Element& x : ball) {
    if (x == e) continue;
    for (int i = 0; i < d; ++i) cons.a(row, i) = static_cast<double>(x[i]);
    cons.b[row] = std::log(w(x));
    cons.points.push_back(x);
    ++row;
  }

  if (d == 1) {
    out.method = "interval intersection";
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    std::size_t lo_at = 0, hi_at = 0;
    for (Eigen::Index i = 0; i < cons.a.rows(); ++i) {
      const double n = cons.a(i, 0);
      const double bound = cons.b[i] / n;
      if (n > 0 && bound < upper) {
        upper = bound;
        hi_at = static_cast<std::size_t>(i);
      } else if (n < 0 && bound > lower) {
        lower = bound;
        lo_at = static_cast<std::size_t>(i);
      }
    }
    out.interval = std::make_pair(lower, upper);
    if (lower > upper + 1e-12 * (1.0 + std::abs(lower) + std::abs(upper))) {
      out.feasible = false;
      out.certificate = {cons.points[lo_at], cons.points[hi_at]};
      out.max_violation = (lower - upper) / 2.0;
      return out;
    }
    out.feasible = true;
    out.phi = Character({0.5 * (lower + upper)});
    out.max_violation = max_violation(cons, out.phi.exponent());
    return out;
  }

  out.method = "analytic center";
  double lower_bound = 0.0;
  auto [c, t] = phase_one(cons, &lower_bound);
  if (lower_bound > 0.0) {
    out.feasible = false;
    // Prefer an explicit pair x, x^-1 with w(x) w(x^-1) < 1.
    for (std::size_t i = 0; i < cons.points.size() && out.certificate.empty(); ++i) {
      const Element inv = g.inverse(cons.points[i]);
      if (cons.b[static_cast<Eigen::Index>(i)] + std::log(w(inv)) < 0.0)
        out.certificate = {cons.points[i], inv};
    }
    if (out.certificate.empty()) {
      const Eigen::VectorXd s = (cons.b.array() + t).matrix() - cons.a * c;
      std::vector<std::size_t> idx(cons.points.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::partial_sort(idx.begin(), idx.begin() + std::min<std::size_t>(d + 1, idx.size()), idx.end(),
                        [&](std::size_t x, std::size_t y) {
                          return s[static_cast<Eigen::Index>(x)] < s[static_cast<Eigen::Index>(y)];
                        });
      for (int i = 0; i <= d && i < static_cast<int>(idx.size()); ++i)
        out.certificate.push_back(cons.points[idx[static_cast<std::size_t>(i)]]);
    }
    out.max_violation = t;
    return out;
  }

  out.feasible = true;
  if (t < 0.0) {
    c = analytic_center(cons, c);
  } else {
    // Feasible set has (numerically) empty interior; keep the phase-one point.
    out.method = "phase-one point (degenerate feasible set)";
  }
  out.phi = Character(std::vector<double>(c.data(), c.data() + c.size()));
  out.max_violation = max_violation(cons, out.phi.exponent());
  return out;
}

AlgebraElement theta(const Character& phi, const AlgebraElement& a) {
  AlgebraElement out(a.group());
  for (const auto& [x, c] : a.terms()) out.add_term(x, c * phi(x));
  return out;
}

ExactElement theta(const Character& phi, const ExactElement& a, bool invert) {
  ExactElement out(a.group());
  for (const auto& [x, c] : a.terms()) {
    const ExactComplex v(exact_from_double(phi(x)));
    out.add_term(x, invert ? c / v : c * v);
  }
  return out;
}

double theta_multiplicativity_residual(const Character& phi, const AlgebraElement& a,
                                       const AlgebraElement& b) {
  return norm(theta(phi, convolve(a, b)) - convolve(theta(phi, a), theta(phi, b)));
}

RescaleResult rescale_and_theta(const Weight& w, const Character& phi, const AlgebraElement& a,
                                const Window& window,
                                const std::vector<std::pair<AlgebraElement, AlgebraElement>>& pairs) {
  if (!(a.group() == w.group())) throw UsageError("element and weight live on different groups");
  Weight nu = Weight::quotient(w, phi);

  std::vector<Element> pts(window.begin(), window.end());
  for (const auto& x : a.support()) pts.push_back(x);
  double min_nu = std::numeric_limits<double>::infinity();
  Element argmin;
  for (const auto& x : pts) {
    const double v = nu(x);
    if (v < min_nu) {
      min_nu = v;
      argmin = x;
    }
  }
  if (min_nu < 1.0 - 1e-12)
    throw ContractViolation("character exceeds the weight at " + to_string(argmin) +
                            " (w/phi = " + std::to_string(min_nu) + ")");

  double residual = 0.0;
  for (const auto& [p, q] : pairs) residual = std::max(residual, theta_multiplicativity_residual(phi, p, q));

  return {std::move(nu), theta(phi, a), pts.empty() ? 1.0 : min_nu, argmin, residual};
}

}  // namespace galab
