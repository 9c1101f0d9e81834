#pragma once

#include <map>
#include <utility>
#include <vector>

#include "galab/error.hpp"
#include "galab/group.hpp"
#include "galab/scalar.hpp"
#include "galab/weight.hpp"

namespace galab {

/// Finitely supported function on a group, i.e. an element of the group
/// algebra l1(G). Terms are kept in canonical element order and never hold
/// a zero amplitude.
template <FieldScalar S>
class BasicElement {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;
  using Terms = std::map<Element, S>;

  explicit BasicElement(GroupSpec group) : group_(std::move(group)) {}
  BasicElement(GroupSpec group, Terms terms) : group_(std::move(group)) {
    for (auto& [x, c] : terms) add_term(x, c);
  }

  static BasicElement delta(const GroupSpec& group, const Element& x, S c = Traits::one()) {
    BasicElement out(group);
    out.add_term(x, c);
    return out;
  }

  const GroupSpec& group() const { return group_; }
  const Terms& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::vector<Element> support() const {
    std::vector<Element> out;
    out.reserve(terms_.size());
    for (const auto& [x, c] : terms_) out.push_back(x);
    return out;
  }

  S coeff(const Element& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  BasicElement& add_term(const Element& x, const S& c) {
    group_.require(x);
    if (Traits::is_zero(c)) return *this;
    auto [it, inserted] = terms_.try_emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
    return *this;
  }

  BasicElement& operator+=(const BasicElement& o) {
    require_same_group(o);
    for (const auto& [x, c] : o.terms_) add_term(x, c);
    return *this;
  }

  BasicElement& operator-=(const BasicElement& o) {
    require_same_group(o);
    for (const auto& [x, c] : o.terms_) add_term(x, -c);
    return *this;
  }

  BasicElement& operator*=(const S& s) {
    if (Traits::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      it = Traits::is_zero(it->second) ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend BasicElement operator+(BasicElement a, const BasicElement& b) { return a += b; }
  friend BasicElement operator-(BasicElement a, const BasicElement& b) { return a -= b; }
  friend BasicElement operator*(BasicElement a, const S& s) { return a *= s; }
  friend BasicElement operator*(const S& s, BasicElement a) { return a *= s; }

  friend bool operator==(const BasicElement& a, const BasicElement& b) {
    return a.group_ == b.group_ && a.terms_ == b.terms_;
  }

  void require_same_group(const BasicElement& o) const {
    if (!(group_ == o.group_))
      throw UsageError("group-algebra elements live on different groups: " + group_.describe() +
                       " vs " + o.group_.describe());
  }

 private:
  GroupSpec group_;
  Terms terms_;
};

using AlgebraElement = BasicElement<Complex>;
using ExactElement = BasicElement<ExactComplex>;

/// (h * f)(z) = sum_y h(z y^-1) f(y), i.e. the product sum_{x,y} h(x) f(y) delta_{xy}.
template <FieldScalar S>
BasicElement<S> convolve(const BasicElement<S>& h, const BasicElement<S>& f) {
  h.require_same_group(f);
  const GroupSpec& g = h.group();
  typename BasicElement<S>::Terms acc;
  for (const auto& [x, hx] : h.terms()) {
    for (const auto& [y, fy] : f.terms()) {
      S term = hx * fy;
      Element z = g.multiply(x, y);
      if (auto it = acc.find(z); it != acc.end())
        it->second += term;
      else
        acc.emplace(std::move(z), std::move(term));
    }
  }
  return BasicElement<S>(g, std::move(acc));
}

/// sum_x |f(x)| w(x); w = nullptr means the unweighted l1 norm.
template <FieldScalar S>
double norm(const BasicElement<S>& f, const Weight* w = nullptr) {
  if (w && !(w->group() == f.group())) throw UsageError("weight and element live on different groups");
  double s = 0.0;
  for (const auto& [x, c] : f.terms()) {
    const double a = ScalarTraits<S>::abs(c);
    s += w ? a * (*w)(x) : a;
  }
  return s;
}

/// sup_x |f(x)|.
template <FieldScalar S>
double sup_norm(const BasicElement<S>& f) {
  double s = 0.0;
  for (const auto& [x, c] : f.terms()) s = std::max(s, ScalarTraits<S>::abs(c));
  return s;
}

AlgebraElement to_float(const ExactElement& f);
/// Exact image of a double-precision element (every double is rational).
ExactElement to_exact(const AlgebraElement& f);

}  // namespace galab
