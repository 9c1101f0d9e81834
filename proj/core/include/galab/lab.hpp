#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galab/json_io.hpp"
#include "galab/scalar.hpp"

namespace galab {

/// Human and machine view of one scripted run. Every number in it is
/// recomputed when the report is built.
struct ScenarioReport {
  std::string name;
  Json parameters;
  std::vector<std::pair<std::string, std::string>> findings;
  std::string verdict;
  Json payload;

  std::string text() const;
  Json to_json() const;
};

// ---------------------------------------------------------------------------
// f = delta_0 - delta_1 acting on bounded sequences over Z

struct LpFindings {
  int n = 0;
  /// max |rho_f(g)| on ball(N) for g = 1 and g = 5, exact.
  mpq_class kernel_residual_one;
  mpq_class kernel_residual_five;
  /// Every solution of a(x) - a(x+1) = [x = 0], x in [-N, N-1], is
  /// a = alpha + t. These are alpha(-N) - alpha(N) and the t-coefficient of the gap.
  mpq_class gap;
  mpq_class gap_t_coefficient;
  /// max_x |rho_f(alpha) - delta_0| on [-N, N-1], exact.
  mpq_class system_residual;
  /// min over t of max(|a(-N)|, |a(N)|).
  mpq_class min_endpoint_sup;
};

LpFindings lp_findings(int n);
ScenarioReport scenario_lp(int n);

// ---------------------------------------------------------------------------
// Fourier multipliers on the circle (coefficient side only)

using CoefficientTable = std::map<std::int64_t, Complex>;

struct TorusOptions {
  /// Default family f^(n) = r^|n|.
  double r = 0.5;
  int n = 1024;
  /// Replaces r^|n|; must be nonzero on every |n| <= N.
  std::optional<CoefficientTable> coefficients;
  /// Dense-range target; default is the square wave up to this degree.
  std::optional<CoefficientTable> target;
  int target_degree = 20;
};

struct TorusFindings {
  int n = 0;
  std::size_t target_terms = 0;
  /// max_n |f^(n) h^(n) - p^(n)| for the preimage of the target p.
  double dense_residual = 0.0;
  /// Preimage coefficients of the target, in increasing n.
  CoefficientTable preimage;
  /// Target p = f: max_n |h^(n) - 1| and how many n had h^(n) != 1 exactly.
  double self_max_deviation = 0.0;
  std::size_t self_mismatches = 0;
  std::size_t self_checked = 0;
  /// Over N/2 <= |n| <= N and over |n| < N/2.
  double tail_max = 0.0;
  double head_max = 0.0;
  bool non_decay = false;
};

/// Square-wave harmonics: -2i / (pi n) for odd 0 < |n| <= degree.
CoefficientTable square_wave(int degree);

TorusFindings torus_findings(const TorusOptions& opts);
ScenarioReport scenario_torus(const TorusOptions& opts);

}  // namespace galab
