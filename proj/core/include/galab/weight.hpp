#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "galab/group.hpp"

namespace galab {

/// Positive multiplicative function on Z^d: phi(x) = exp(<c, x>).
class Character {
 public:
  Character() = default;
  explicit Character(std::vector<double> c) : c_(std::move(c)) {}

  const std::vector<double>& exponent() const { return c_; }
  int rank() const { return static_cast<int>(c_.size()); }

  double log_value(const Element& x) const;
  double operator()(const Element& x) const;
  /// The reciprocal character 1/phi.
  Character reciprocal() const;

 private:
  std::vector<double> c_;
};

/// A positive function on a group, intended to be submultiplicative. The
/// weight is bound to its group; evaluation at an element of another group
/// is a usage error. Submultiplicativity is not enforced on construction,
/// see check_weight().
class Weight {
 public:
  enum class Kind {
    constant,         // 1
    exp_symmetric,    // base^|x|
    polynomial,       // (1 + |x|)^beta
    exp_directional,  // exp(max(<a, x>, 0)), Z^d only
    character,        // exp(<c, x>), Z^d only
    table,            // explicit values on ball(radius)
    product,          // w1 * w2
    quotient,         // w / phi
  };

  enum class Extension {
    error,                    // evaluation outside the table ball throws
    multiplicative_envelope,  // min over splittings x = y z, y in the ball
  };

  static Weight constant(GroupSpec group);
  static Weight exp_symmetric(GroupSpec group, double base);
  static Weight polynomial(GroupSpec group, double beta);
  static Weight exp_directional(GroupSpec group, std::vector<double> a);
  static Weight character(GroupSpec group, Character phi);
  /// values[i] is the weight of group.ball(radius)[i].
  static Weight table(GroupSpec group, int radius, std::vector<double> values,
                      Extension extension = Extension::error);
  static Weight product(const Weight& a, const Weight& b);
  static Weight quotient(const Weight& w, const Character& phi);

  Kind kind() const;
  const GroupSpec& group() const;
  bool is_constant() const { return kind() == Kind::constant; }

  double operator()(const Element& x) const;

  // Introspection for serialization.
  double base() const;
  double beta() const;
  const std::vector<double>& vector() const;
  int table_radius() const;
  const std::vector<double>& table_values() const;
  Extension extension() const;
  std::pair<const Weight*, const Weight*> factors() const;
  const Weight* numerator() const;
  const Character* divisor() const;

 private:
  struct Node;
  explicit Weight(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct WeightReport {
  bool submultiplicative = true;
  /// Pair (x, y) maximizing w(xy) / (w(x) w(y)) among pairs with xy in the window.
  std::optional<std::pair<Element, Element>> worst_pair;
  double worst_ratio = 0.0;
  bool symmetric = true;
  std::optional<Element> asymmetric_at;
  double min_value = 0.0;
  Element argmin;
  std::size_t pairs_checked = 0;
  double relative_tolerance = 0.0;
};

/// Exhaustive check of w(xy) <= w(x) w(y) over pairs x, y in the window whose
/// product also lies in it, symmetry w(x^-1) = w(x) for x with x^-1 in the
/// window, and the minimum over the window. Comparisons are relative with
/// tolerance rel_tol.
WeightReport check_weight(const Weight& w, const Window& window, double rel_tol = 1e-12);

}  // namespace galab
