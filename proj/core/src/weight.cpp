#include "galab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <variant>

#include "galab/detail/parallel.hpp"
#include "galab/error.hpp"

namespace galab {

// ---------------------------------------------------------------------------
// Character

double Character::log_value(const Element& x) const {
  if (x.size() != c_.size())
    throw UsageError("character of rank " + std::to_string(c_.size()) + " applied to " + to_string(x));
  double s = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * static_cast<double>(x[i]);
  return s;
}

double Character::operator()(const Element& x) const { return std::exp(log_value(x)); }

Character Character::reciprocal() const {
  std::vector<double> c(c_);
  for (auto& v : c) v = -v;
  return Character(std::move(c));
}

// ---------------------------------------------------------------------------
// Weight

struct Weight::Node {
  Kind kind = Kind::constant;
  GroupSpec group = GroupSpec::lattice(1);
  double scalar = 1.0;               // base or beta
  std::vector<double> vec;           // directional vector
  Character phi;                     // character / quotient divisor
  int radius = 0;                    // table
  std::vector<double> values;        // table
  std::map<Element, double> lookup;  // table
  Extension extension = Extension::error;
  std::optional<Weight> a, b;        // product factors, quotient numerator in a

  double eval(const Element& x) const;
  double envelope(const Element& x) const;
};

namespace {

void require_lattice(const GroupSpec& g, std::size_t dim, const char* what) {
  if (g.kind() != GroupKind::lattice)
    throw UsageError(std::string(what) + " weights are only defined on Z^d");
  if (static_cast<std::size_t>(g.rank()) != dim)
    throw UsageError(std::string(what) + " vector length does not match lattice rank");
}

}  // namespace

double Weight::Node::eval(const Element& x) const {
  switch (kind) {
    case Kind::constant:
      return 1.0;
    case Kind::exp_symmetric:
      return std::pow(scalar, static_cast<double>(group.length(x)));
    case Kind::polynomial:
      return std::pow(1.0 + static_cast<double>(group.length(x)), scalar);
    case Kind::exp_directional: {
      double s = 0.0;
      for (std::size_t i = 0; i < vec.size(); ++i) s += vec[i] * static_cast<double>(x[i]);
      return std::exp(std::max(s, 0.0));
    }
    case Kind::character:
      return phi(x);
    case Kind::table: {
      auto it = lookup.find(x);
      if (it != lookup.end()) return it->second;
      if (extension == Extension::error)
        throw UsageError("table weight undefined at " + to_string(x) + " (outside ball of radius " +
                         std::to_string(radius) + ")");
      return envelope(x);
    }
    case Kind::product:
      return (*a)(x) * (*b)(x);
    case Kind::quotient:
      return (*a)(x) / phi(x);
  }
  return 1.0;
}

// Multiplicative envelope: w(x) = min over x = y z with y in the table ball,
// |y| >= 1 and |z| = |x| - |y|, of w(y) w(z). Geodesic splittings strictly
// shorten z, so the recursion terminates; memoized per call.
double Weight::Node::envelope(const Element& x) const {
  std::map<Element, double> memo;
  const auto rec = [&](const auto& self, const Element& v) -> double {
    if (auto it = lookup.find(v); it != lookup.end()) return it->second;
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    const std::int64_t len = group.length(v);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [y, wy] : lookup) {
      const std::int64_t ly = group.length(y);
      if (ly == 0 || ly > len) continue;
      const Element z = group.multiply(group.inverse(y), v);
      if (group.length(z) != len - ly) continue;
      best = std::min(best, wy * self(self, z));
    }
    if (!std::isfinite(best))
      throw UsageError("table weight has no geodesic extension to " + to_string(v));
    memo.emplace(v, best);
    return best;
  };
  return rec(rec, x);
}

Weight Weight::constant(GroupSpec group) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->group = std::move(group);
  return Weight(std::move(n));
}

Weight Weight::exp_symmetric(GroupSpec group, double base) {
  if (!(base > 0.0) || !std::isfinite(base)) throw UsageError("exp_symmetric base must be > 0");
  auto n = std::make_shared<Node>();
  n->kind = Kind::exp_symmetric;
  n->group = std::move(group);
  n->scalar = base;
  return Weight(std::move(n));
}

Weight Weight::polynomial(GroupSpec group, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw UsageError("polynomial beta must be >= 0");
  auto n = std::make_shared<Node>();
  n->kind = Kind::polynomial;
  n->group = std::move(group);
  n->scalar = beta;
  return Weight(std::move(n));
}

Weight Weight::exp_directional(GroupSpec group, std::vector<double> a) {
  require_lattice(group, a.size(), "exp_directional");
  auto n = std::make_shared<Node>();
  n->kind = Kind::exp_directional;
  n->group = std::move(group);
  n->vec = std::move(a);
  return Weight(std::move(n));
}

Weight Weight::character(GroupSpec group, Character phi) {
  require_lattice(group, phi.exponent().size(), "character");
  auto n = std::make_shared<Node>();
  n->kind = Kind::character;
  n->group = std::move(group);
  n->phi = std::move(phi);
  return Weight(std::move(n));
}

Weight Weight::table(GroupSpec group, int radius, std::vector<double> values, Extension extension) {
  const Window ball = group.ball(radius);
  if (values.size() != ball.size())
    throw UsageError("table weight needs " + std::to_string(ball.size()) + " values for radius " +
                     std::to_string(radius) + ", got " + std::to_string(values.size()));
  auto n = std::make_shared<Node>();
  n->kind = Kind::table;
  n->group = std::move(group);
  n->radius = radius;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw UsageError("table weight values must be positive and finite");
    n->lookup.emplace(ball[i], values[i]);
  }
  n->values = std::move(values);
  n->extension = extension;
  return Weight(std::move(n));
}

Weight Weight::product(const Weight& a, const Weight& b) {
  if (!(a.group() == b.group())) throw UsageError("product of weights on different groups");
  auto n = std::make_shared<Node>();
  n->kind = Kind::product;
  n->group = a.group();
  n->a = a;
  n->b = b;
  return Weight(std::move(n));
}

Weight Weight::quotient(const Weight& w, const Character& phi) {
  require_lattice(w.group(), phi.exponent().size(), "quotient");
  auto n = std::make_shared<Node>();
  n->kind = Kind::quotient;
  n->group = w.group();
  n->a = w;
  n->phi = phi;
  return Weight(std::move(n));
}

Weight::Kind Weight::kind() const { return node_->kind; }
const GroupSpec& Weight::group() const { return node_->group; }

double Weight::operator()(const Element& x) const {
  node_->group.require(x);
  const double v = node_->eval(x);
  if (!(v > 0.0) || !std::isfinite(v))
    throw ContractViolation("weight evaluated to non-positive or non-finite value at " + to_string(x));
  return v;
}

double Weight::base() const { return node_->scalar; }
double Weight::beta() const { return node_->scalar; }
const std::vector<double>& Weight::vector() const { return node_->vec; }
int Weight::table_radius() const { return node_->radius; }
const std::vector<double>& Weight::table_values() const { return node_->values; }
Weight::Extension Weight::extension() const { return node_->extension; }

std::pair<const Weight*, const Weight*> Weight::factors() const {
  if (node_->kind != Kind::product) return {nullptr, nullptr};
  return {&*node_->a, &*node_->b};
}

const Weight* Weight::numerator() const {
  return node_->kind == Kind::quotient ? &*node_->a : nullptr;
}

const Character* Weight::divisor() const {
  return node_->kind == Kind::quotient || node_->kind == Kind::character ? &node_->phi : nullptr;
}

// ---------------------------------------------------------------------------
// check_weight

WeightReport check_weight(const Weight& w, const Window& window, double rel_tol) {
  const GroupSpec& g = w.group();
  const std::size_t n = window.size();
  WeightReport report;
  report.relative_tolerance = rel_tol;
  if (n == 0) return report;

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = w(window[i]);

  const auto min_it = std::min_element(values.begin(), values.end());
  report.min_value = *min_it;
  report.argmin = window[static_cast<std::size_t>(min_it - values.begin())];

  for (std::size_t i = 0; i < n; ++i) {
    const auto j = window.index_of(g.inverse(window[i]));
    if (!j) continue;
    const double a = values[i], b = values[*j];
    if (std::abs(a - b) > rel_tol * std::max(a, b)) {
      report.symmetric = false;
      if (!report.asymmetric_at) report.asymmetric_at = window[i];
    }
  }

  struct RowResult {
    double worst = 0.0;
    std::size_t partner = 0;
    std::size_t checked = 0;
  };
  std::vector<RowResult> rows(n);
  detail::parallel_for(n, [&](std::size_t i) {
    RowResult r;
    for (std::size_t j = 0; j < n; ++j) {
      const auto k = window.index_of(g.multiply(window[i], window[j]));
      if (!k) continue;
      ++r.checked;
      const double ratio = values[*k] / (values[i] * values[j]);
      if (ratio > r.worst) {
        r.worst = ratio;
        r.partner = j;
      }
    }
    rows[i] = r;
  }, 16);

  std::size_t worst_row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    report.pairs_checked += rows[i].checked;
    if (rows[i].worst > rows[worst_row].worst) worst_row = i;
  }
  report.worst_ratio = rows[worst_row].worst;
  report.worst_pair = std::make_pair(window[worst_row], window[rows[worst_row].partner]);
  report.submultiplicative = report.worst_ratio <= 1.0 + rel_tol;
  return report;
}

}  // namespace galab
