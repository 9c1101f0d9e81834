#include "galab/operators.hpp"

#include <algorithm>
#include <cmath>

#include "galab/detail/parallel.hpp"

namespace galab {

Window input_window(const GroupSpec& group, const Window& window, std::span<const Element> support) {
  std::vector<Element> pts(window.begin(), window.end());
  pts.reserve(window.size() * (support.size() + 1));
  for (const Element& x : window)
    for (const Element& y : support) pts.push_back(group.multiply(x, y));
  return Window::sorted(std::move(pts));
}

// ---------------------------------------------------------------------------
// WindowedOperator

Eigen::VectorXcd WindowedOperator::vectorize(const PointFunction<Complex>& g) const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(input_.size()));
  for (std::size_t i = 0; i < input_.size(); ++i) {
    auto it = g.find(input_[i]);
    if (it == g.end()) throw UsageError("input function undefined at " + to_string(input_[i]));
    v[static_cast<Eigen::Index>(i)] = it->second;
  }
  return v;
}

PointFunction<Complex> WindowedOperator::apply(const PointFunction<Complex>& g) const {
  const Eigen::VectorXcd y = matrix_ * vectorize(g);
  PointFunction<Complex> out;
  for (std::size_t i = 0; i < output_.size(); ++i) out.emplace(output_[i], y[static_cast<Eigen::Index>(i)]);
  return out;
}

WindowedOperator assemble_matrix(const AlgebraElement& f, const Window& window, const Weight* w,
                                 std::size_t cap) {
  const GroupSpec& group = f.group();
  if (w && !(w->group() == group)) throw UsageError("weight and operator live on different groups");
  if (window.size() * std::max<std::size_t>(f.support_size(), 1) > cap)
    throw ResourceError("operator would have more than " + std::to_string(cap) + " nonzeros");

  const auto support = f.support();
  Window input = input_window(group, window, support);
  if (input.size() > cap) throw ResourceError("input window exceeds cap");

  const bool weighted = w != nullptr && !w->is_constant();
  using Triplet = Eigen::Triplet<Complex>;
  std::vector<std::vector<Triplet>> rows(window.size());
  detail::parallel_for(window.size(), [&](std::size_t r) {
    const Element& x = window[r];
    const double wx = weighted ? (*w)(x) : 1.0;
    auto& out = rows[r];
    out.reserve(f.support_size());
    for (const auto& [y, fy] : f.terms()) {
      const Element z = group.multiply(x, y);
      const auto col = *input.index_of(z);
      const Complex entry = weighted ? ((*w)(z) / wx) * fy : fy;
      out.emplace_back(static_cast<int>(r), static_cast<int>(col), entry);
    }
  }, 256);

  std::vector<Triplet> triplets;
  for (auto& r : rows) triplets.insert(triplets.end(), r.begin(), r.end());
  WindowedOperator::Matrix m(static_cast<Eigen::Index>(window.size()),
                             static_cast<Eigen::Index>(input.size()));
  m.setFromTriplets(triplets.begin(), triplets.end());

  std::optional<Weight> wcopy;
  if (w) wcopy = *w;
  return WindowedOperator(f, std::move(wcopy), window, std::move(input), std::move(m));
}

Eigen::MatrixXcd right_multiplication_matrix(const AlgebraElement& f, const Window& window,
                                             const Window& input) {
  const GroupSpec& group = f.group();
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(input.size()),
                                              static_cast<Eigen::Index>(window.size()));
  for (std::size_t c = 0; c < window.size(); ++c) {
    const AlgebraElement image = convolve(AlgebraElement::delta(group, window[c]), f);
    for (const auto& [z, v] : image.terms()) {
      const auto row = input.index_of(z);
      if (!row) throw UsageError("right multiplication leaves the supplied input window at " + to_string(z));
      r(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return r;
}

PointFunction<Complex> m_omega_apply(const PointFunction<Complex>& h, const Weight& w, Direction dir) {
  PointFunction<Complex> out;
  for (const auto& [t, v] : h) {
    const double wt = w(t);
    out.emplace(t, dir == Direction::forward ? v * wt : v / wt);
  }
  return out;
}

double conjugation_check(const AlgebraElement& f, const Weight& w, const Window& window) {
  if (!(w.group() == f.group())) throw UsageError("weight and element live on different groups");

  const WindowedOperator direct = assemble_matrix(f, window, &w);
  const Window& input = direct.input_window();
  const Eigen::MatrixXcd adjoint = right_multiplication_matrix(f, window, input).transpose();

  // Column j of M_w^-1 R' M_w: apply M_w to delta_{z_j}, then R', then M_w^-1.
  Eigen::MatrixXcd conjugated(adjoint.rows(), adjoint.cols());
  for (Eigen::Index j = 0; j < adjoint.cols(); ++j) {
    const PointFunction<Complex> unit{{input[static_cast<std::size_t>(j)], Complex{1.0, 0.0}}};
    const Complex scaled = m_omega_apply(unit, w, Direction::forward).begin()->second;
    PointFunction<Complex> column;
    for (Eigen::Index i = 0; i < adjoint.rows(); ++i)
      column.emplace(window[static_cast<std::size_t>(i)], adjoint(i, j) * scaled);
    const PointFunction<Complex> back = m_omega_apply(column, w, Direction::inverse);
    for (Eigen::Index i = 0; i < adjoint.rows(); ++i)
      conjugated(i, j) = back.at(window[static_cast<std::size_t>(i)]);
  }

  const Eigen::MatrixXcd diff = direct.dense() - conjugated;
  return diff.size() == 0 ? 0.0 : diff.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Fourier symbols

FourierSymbol::FourierSymbol(const AlgebraElement& f) {
  if (f.group().kind() != GroupKind::lattice)
    throw UsageError("Fourier symbols are defined for elements of l1(Z^d) only");
  rank_ = f.group().rank();
  for (const auto& [n, c] : f.terms()) {
    std::vector<double> v(n.vec().begin(), n.vec().end());
    terms_.emplace_back(std::move(v), c);
  }
}

Complex FourierSymbol::operator()(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != rank_)
    throw UsageError("angle vector length does not match lattice rank");
  Complex acc{};
  for (const auto& [n, c] : terms_) {
    double phase = 0.0;
    for (int i = 0; i < rank_; ++i) phase += n[i] * theta[i];
    acc += c * std::polar(1.0, phase);
  }
  return acc;
}

double FourierSymbol::lipschitz_bound() const {
  double l = 0.0;
  for (const auto& [n, c] : terms_) {
    double len = 0.0;
    for (double v : n) len += std::abs(v);
    l += len * std::abs(c);
  }
  return l;
}

Complex fourier_eval(const AlgebraElement& f, std::span<const double> theta) {
  return FourierSymbol(f)(theta);
}

// ---------------------------------------------------------------------------
// Finite quotients

QuotientOperator quotient_operator(const AlgebraElement& f, const std::vector<std::int64_t>& moduli,
                                   std::size_t cap) {
  QuotientMap q(moduli);
  if (q.order() > cap)
    throw ResourceError("quotient of order " + std::to_string(q.order()) + " exceeds cap " +
                        std::to_string(cap));
  const std::vector<Complex> fbar = pushforward(f, q);
  const auto n = static_cast<Eigen::Index>(q.order());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  // Column x is delta_x * fbar = sum_y fbar(y) delta_{x+y}.
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y) {
      if (fbar[static_cast<std::size_t>(y)] == Complex{}) continue;
      const auto z = q.multiply(Element::index(x), Element::index(y))[0];
      m(static_cast<Eigen::Index>(z), x) += fbar[static_cast<std::size_t>(y)];
    }
  return {std::move(q), std::move(m)};
}

}  // namespace galab
