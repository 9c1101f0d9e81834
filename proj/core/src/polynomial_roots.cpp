#include "galab/polynomial.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "galab/error.hpp"

namespace galab {

namespace {

// Parlett-Reinsch balancing by powers of two, which leaves eigenvalues
// unchanged and does not introduce rounding.
void balance(Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  constexpr double kGamma = 0.9;
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(m(i, j));
        col += std::abs(m(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      if (std::ldexp(col, exponent) + std::ldexp(row, -exponent) < kGamma * (row + col)) {
        changed = true;
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  std::size_t lo = 0, hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == Complex{}) --hi;
  if (hi == 0) throw UsageError("roots of the zero polynomial are undefined");
  while (coeffs[lo] == Complex{}) ++lo;

  std::vector<Complex> roots(lo, Complex{});
  const std::size_t degree = hi - 1 - lo;
  if (degree == 0) return roots;

  const Complex lead = coeffs[hi - 1];
  if (degree == 1) {
    roots.push_back(-coeffs[lo] / lead);
    return roots;
  }

  const auto n = static_cast<Eigen::Index>(degree);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  companion.diagonal(-1).setOnes();
  for (Eigen::Index k = 0; k < n; ++k) companion(k, n - 1) = -coeffs[lo + static_cast<std::size_t>(k)] / lead;
  balance(companion);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    // Shifted QR can stall on cyclic structure; a fixed unitary similarity breaks it.
    std::mt19937_64 rng(n);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd r(n, n);
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = Complex(gauss(rng), gauss(rng));
    const Eigen::MatrixXcd q = r.householderQr().householderQ();
    solver.compute(q.adjoint() * companion * q, false);
    if (solver.info() != Eigen::Success) throw ResourceError("companion eigenvalue iteration did not converge");
  }
  for (Eigen::Index k = 0; k < n; ++k) roots.push_back(solver.eigenvalues()[k]);
  return roots;
}

std::vector<Complex> laurent_roots(const AlgebraElement& f) {
  if (f.group().kind() != GroupKind::lattice || f.group().rank() != 1)
    throw UsageError("Laurent roots need an element of l1(Z)");
  if (f.is_zero()) throw UsageError("roots of the zero element are undefined");
  const std::int64_t lo = f.terms().begin()->first[0];
  const std::int64_t hi = f.terms().rbegin()->first[0];
  std::vector<Complex> coeffs(static_cast<std::size_t>(hi - lo + 1), Complex{});
  for (const auto& [n, c] : f.terms()) coeffs[static_cast<std::size_t>(n[0] - lo)] = c;
  return polynomial_roots(coeffs);
}

}  // namespace galab
