#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galab/algebra.hpp"
#include "galab/weight.hpp"

namespace galab {

/// Outcome of searching for a character phi(x) = exp(<c, x>) with phi <= w on
/// ball(radius) of Z^d. Feasibility on a ball is all a finite computation
/// certifies; the report always carries the radius.
struct DominationResult {
  bool feasible = false;
  int radius = 0;
  Character phi;
  /// d = 1: the feasible interval [lower, upper] for c.
  std::optional<std::pair<double, double>> interval;
  /// max over the ball of <c, x> - log w(x); <= 0 up to rounding when feasible.
  double max_violation = 0.0;
  /// When infeasible: elements whose constraints cannot hold together.
  std::vector<Element> certificate;
  std::string method;
};

/// Returns the analytic center of { c : <c, x> <= log w(x), x in ball(r) \ {e} }
/// (the interval midpoint when d = 1). Requires w on Z^d.
DominationResult dominate_character(const Weight& w, int radius);

/// theta_phi(a)(x) = phi(x) a(x); Direction-free: pass phi.reciprocal() to invert.
AlgebraElement theta(const Character& phi, const AlgebraElement& a);
/// Exact variant: multiplies by the exact rational value of the double phi(x),
/// so theta(phi^-1) o theta(phi) is the identity exactly.
ExactElement theta(const Character& phi, const ExactElement& a, bool invert = false);

/// || theta(a * b) - theta(a) * theta(b) ||_1
double theta_multiplicativity_residual(const Character& phi, const AlgebraElement& a,
                                       const AlgebraElement& b);

struct RescaleResult {
  Weight nu;
  AlgebraElement theta_a;
  double min_nu = 0.0;
  Element argmin;
  /// Max multiplicativity residual over the supplied pairs (0 if none).
  double max_theta_residual = 0.0;
};

/// nu = w / phi and theta(a). Checks nu >= 1 - 1e-12 on the window and on
/// supp(a); a character exceeding the weight there is a ContractViolation.
RescaleResult rescale_and_theta(const Weight& w, const Character& phi, const AlgebraElement& a,
                                const Window& window,
                                const std::vector<std::pair<AlgebraElement, AlgebraElement>>& pairs = {});

}  // namespace galab
