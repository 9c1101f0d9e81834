#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "galab/algebra.hpp"
#include "galab/group.hpp"
#include "galab/weight.hpp"

namespace galab {

/// A function given pointwise on a finite set of group elements.
template <FieldScalar S>
using PointFunction = std::map<Element, S>;

/// W together with W * supp(f): every point rho_f needs to read when
/// evaluated on W. Sorted lexicographically.
Window input_window(const GroupSpec& group, const Window& window, std::span<const Element> support);

/// rho_f(g)(x) = sum_y (w(xy) / w(x)) g(xy) f(y) for every x in the window.
/// Unweighted when w is null or constant. g must be defined on
/// input_window(...); a missing point is a UsageError naming it.
template <FieldScalar S>
PointFunction<S> rho_apply(const BasicElement<S>& f, const PointFunction<S>& g, const Window& window,
                           const Weight* w = nullptr) {
  using Traits = ScalarTraits<S>;
  const GroupSpec& group = f.group();
  const bool weighted = w != nullptr && !w->is_constant();
  if (w && !(w->group() == group)) throw UsageError("weight and operator live on different groups");

  PointFunction<S> out;
  for (const Element& x : window) {
    group.require(x);
    S acc = Traits::zero();
    const double wx = weighted ? (*w)(x) : 1.0;
    for (const auto& [y, fy] : f.terms()) {
      const Element xy = group.multiply(x, y);
      auto it = g.find(xy);
      if (it == g.end()) throw UsageError("rho_apply: input function undefined at " + to_string(xy));
      if (weighted)
        acc += Traits::from_double((*w)(xy) / wx) * it->second * fy;
      else
        acc += it->second * fy;
    }
    out.emplace(x, std::move(acc));
  }
  return out;
}

/// Bilinear l1 / l-infinity pairing <h, g> = sum_x h(x) g(x). No conjugation,
/// so adjoints are transposes in the canonical bases.
template <FieldScalar S>
S pairing(const BasicElement<S>& h, const PointFunction<S>& g) {
  S acc = ScalarTraits<S>::zero();
  for (const auto& [x, hx] : h.terms()) {
    auto it = g.find(x);
    if (it == g.end()) throw UsageError("pairing: function undefined at " + to_string(x));
    acc += hx * it->second;
  }
  return acc;
}

/// Matrix realization of rho_f (or its weighted analogue) on a window:
/// M[x, z] = (w(z) / w(x)) f(x^-1 z) with rows indexed by the output window
/// and columns by the enlarged input window.
class WindowedOperator {
 public:
  using Matrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

  WindowedOperator(AlgebraElement f, std::optional<Weight> w, Window output, Window input, Matrix m)
      : f_(std::move(f)), weight_(std::move(w)), output_(std::move(output)),
        input_(std::move(input)), matrix_(std::move(m)) {}

  const AlgebraElement& element() const { return f_; }
  const std::optional<Weight>& weight() const { return weight_; }
  const Window& output_window() const { return output_; }
  const Window& input_window() const { return input_; }
  const Matrix& matrix() const { return matrix_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }

  /// Values of g on the input window, in window order.
  Eigen::VectorXcd vectorize(const PointFunction<Complex>& g) const;
  PointFunction<Complex> apply(const PointFunction<Complex>& g) const;

 private:
  AlgebraElement f_;
  std::optional<Weight> weight_;
  Window output_;
  Window input_;
  Matrix matrix_;
};

inline constexpr std::size_t kDefaultMatrixCap = 10'000'000;

/// Throws ResourceError when |W| * |supp f| or the input window exceeds cap.
WindowedOperator assemble_matrix(const AlgebraElement& f, const Window& window,
                                 const Weight* w = nullptr, std::size_t cap = kDefaultMatrixCap);

/// Matrix of R_f : h -> h * f from span{delta_x : x in W} into
/// span{delta_z : z in input_window}, column x holding delta_x * f.
Eigen::MatrixXcd right_multiplication_matrix(const AlgebraElement& f, const Window& window,
                                             const Window& input);

enum class Direction { forward, inverse };

/// (M_w h)(t) = h(t) w(t); the inverse divides.
PointFunction<Complex> m_omega_apply(const PointFunction<Complex>& h, const Weight& w, Direction dir);

/// Max entrywise deviation between the directly assembled weighted matrix and
/// M_w^-1 (R_f)^T M_w built from right multiplication.
double conjugation_check(const AlgebraElement& f, const Weight& w, const Window& window);

/// Fourier transform f^(theta) = sum_n f(n) exp(i <n, theta>) of an element of l1(Z^d).
class FourierSymbol {
 public:
  explicit FourierSymbol(const AlgebraElement& f);

  int rank() const { return rank_; }
  Complex operator()(std::span<const double> theta) const;
  /// L = sum_n |n|_1 |f(n)|, so |f^(a) - f^(b)| <= L |a - b|_inf.
  double lipschitz_bound() const;
  const std::vector<std::pair<std::vector<double>, Complex>>& terms() const { return terms_; }

 private:
  int rank_ = 1;
  std::vector<std::pair<std::vector<double>, Complex>> terms_;
};

Complex fourier_eval(const AlgebraElement& f, std::span<const double> theta);

/// Coefficients of the image of f in Z/m1 x ... x Z/md, indexed by quotient index.
template <FieldScalar S>
std::vector<S> pushforward(const BasicElement<S>& f, const QuotientMap& q) {
  if (f.group().kind() != GroupKind::lattice || f.group().rank() != q.rank())
    throw UsageError("pushforward needs an element of Z^d matching the quotient rank");
  std::vector<S> out(q.order(), ScalarTraits<S>::zero());
  for (const auto& [x, c] : f.terms()) out[static_cast<std::size_t>(q(x)[0])] += c;
  return out;
}

struct QuotientOperator {
  QuotientMap map;
  /// [z, x] = fbar(x^-1 z): right convolution by the pushforward of f.
  Eigen::MatrixXcd matrix;
};

inline constexpr std::size_t kDefaultQuotientCap = 4096;

QuotientOperator quotient_operator(const AlgebraElement& f, const std::vector<std::int64_t>& moduli,
                                   std::size_t cap = kDefaultQuotientCap);

}  // namespace galab
