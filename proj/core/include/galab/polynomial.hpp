#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "galab/algebra.hpp"

namespace galab {

/// Roots of sum_k coeffs[k] z^k (ascending order) as eigenvalues of the
/// balanced companion matrix. Leading and trailing zero coefficients are
/// stripped; trailing zeros contribute roots at 0.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

/// Roots of the Laurent polynomial sum_n f(n) z^n of an element of l1(Z),
/// i.e. of z^-lo times an ordinary polynomial; never includes z = 0.
std::vector<Complex> laurent_roots(const AlgebraElement& f);

}  // namespace galab
