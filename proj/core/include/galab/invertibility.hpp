#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "galab/algebra.hpp"
#include "galab/weight.hpp"

namespace galab {

enum class Verdict { invertible, not_invertible, inconclusive };

enum class CertificateKind { exact_finite, wiener_grid, neumann_series, fft_candidate, quotient_witness };

std::string to_string(Verdict v);
std::string to_string(CertificateKind k);

struct ExactFinitePayload {
  std::size_t order = 0;
  bool exact_mode = false;
  /// Rational-mode inverse, when one was found.
  std::optional<ExactElement> exact_inverse;
  /// Normalized kernel vector of the right-regular matrix when singular
  /// (first nonzero entry is 1), indexed by group element index.
  std::vector<Complex> kernel;
  std::vector<ExactComplex> exact_kernel;
  /// Both residuals are exactly zero (rational mode only).
  bool residuals_exact_zero = false;
};

struct WienerPayload {
  int grid = 0;
  double grid_min = 0.0;
  std::vector<double> grid_argmin;
  double lipschitz = 0.0;
  double spacing = 0.0;
  double margin = 0.0;
  double root_tolerance = 0.0;
  /// d = 1 only: roots of the Laurent polynomial and the closest one to |z| = 1.
  std::vector<Complex> roots;
  std::optional<double> nearest_root_distance;
  std::optional<Complex> witness_root;
  std::optional<double> witness_theta;
  std::optional<double> witness_modulus;
  /// FFT size used to produce the verified inverse.
  std::optional<int> inverse_fft_size;
};

struct NeumannPayload {
  Element pivot;
  double ratio = 0.0;
  int terms = 0;
  double tail_bound = 0.0;
};

struct FftPayload {
  int size = 0;
  double min_symbol_modulus = 0.0;
  std::optional<std::vector<std::int64_t>> offending_frequency;
};

struct QuotientPayload {
  std::vector<std::int64_t> moduli;
  std::vector<std::int64_t> frequency;
  double modulus = 0.0;
  bool exact = false;
};

/// Tagged verdict. An `invertible` verdict is only ever emitted after both
/// residuals ||g*f - e||_{1,w} and ||f*g - e||_{1,w} were recomputed from the
/// candidate inverse and found <= tolerance.
struct Certificate {
  Verdict verdict = Verdict::inconclusive;
  std::variant<ExactFinitePayload, WienerPayload, NeumannPayload, FftPayload, QuotientPayload> payload;
  std::optional<AlgebraElement> inverse;
  std::optional<double> residual;
  std::optional<double> right_residual;
  double tolerance = 0.0;
  std::string note;

  CertificateKind kind() const { return static_cast<CertificateKind>(payload.index()); }
  template <class P>
  const P& as() const { return std::get<P>(payload); }
};

// ---------------------------------------------------------------------------
// Finite groups

inline constexpr std::size_t kFiniteOrderCap = 256;

/// Solves g*f = e with the |G| x |G| right-regular matrix. Rational mode is
/// exact; float mode uses a full-pivot LU. Singular matrices give
/// not_invertible with a kernel vector.
Certificate invert_finite(const AlgebraElement& f, double tol = 1e-10, const Weight* w = nullptr,
                          std::size_t cap = kFiniteOrderCap);
Certificate invert_finite(const ExactElement& f, std::size_t cap = kFiniteOrderCap);

struct DirectFinitenessReport {
  double left_residual = 0.0;   // ||g*f - e||
  double right_residual = 0.0;  // ||f*g - e||
  double tolerance = 0.0;
  double slack = 10.0;
  bool exact_zero = false;  // rational mode: both residuals are exactly 0
  bool pass = false;
};

/// pass iff (left <= tol implies right <= tol * slack).
DirectFinitenessReport verify_direct_finiteness(const AlgebraElement& f, const AlgebraElement& g,
                                                const Weight* w, double tol, double slack = 10.0);
DirectFinitenessReport verify_direct_finiteness(const ExactElement& f, const ExactElement& g,
                                                const Weight* w, double tol, double slack = 10.0);

// ---------------------------------------------------------------------------
// Z^d oracles

struct WienerOptions {
  int grid = 64;
  double tol = 1e-10;
  double root_tolerance = 1e-9;
  std::size_t grid_cap = std::size_t{1} << 24;
  std::size_t fft_cap = std::size_t{1} << 22;
};

/// Grid scan of |f^| with a Lipschitz margin; for d = 1 also companion-matrix
/// roots. Grid data alone never certifies non-invertibility.
Certificate wiener_certify(const AlgebraElement& f, const WienerOptions& opts = {});

struct FftOptions {
  double tol = 1e-10;
  /// |f^| below this at a grid point aborts with the offending frequency.
  double zero_threshold = 1e-12;
  const Weight* weight = nullptr;
  std::size_t cap = std::size_t{1} << 22;
};

/// Candidate inverse from 1/f^ sampled on the N^d grid, supported on the
/// centered fundamental domain [-N/2, N/2)^d. N must be a power of two.
Certificate invert_via_fft(const AlgebraElement& f, int n, const FftOptions& opts = {});

struct NeumannOptions {
  /// Default: the support point with the smallest contraction ratio, ties
  /// broken by canonical element order.
  std::optional<Element> pivot;
  int terms = 40;
  double tol = 1e-10;
  /// Drop series terms with |c| w(x) below this (0 keeps everything).
  double prune = 0.0;
  std::size_t support_cap = 1'000'000;
};

/// Contraction ratio ||e - u^-1 * f||_{1,w} for u = f(pivot) delta_pivot.
double neumann_ratio(const AlgebraElement& f, const Weight* w, const Element& pivot);

/// Geometric series (sum_{k<=K} r^k) * u^-1 with r = e - u^-1 * f. Works on
/// any group; not contractive (ratio >= 1) is inconclusive.
Certificate neumann_invert(const AlgebraElement& f, const Weight* w, const NeumannOptions& opts = {});

struct QuotientProbe {
  std::vector<std::int64_t> moduli;
  bool nonsingular = true;
  double min_modulus = 0.0;
  /// Character index k (f^ evaluated at 2 pi k / m) attaining min_modulus.
  std::vector<std::int64_t> frequency;
  /// Singularity was confirmed by exact rank computation.
  bool exact = false;
};

struct ProbeOptions {
  /// Eigenvalues below singular_tol * ||f||_1 are confirmed exactly.
  double singular_tol = 1e-8;
  std::size_t exact_cap = 256;
  std::size_t cap = 1 << 16;
};

/// Spectrum of the pushforward of f on each finite quotient of Z^d. A
/// singular quotient certifies f is not invertible in l1(Z^d).
std::vector<QuotientProbe> probe_quotients(const AlgebraElement& f,
                                           const std::vector<std::vector<std::int64_t>>& moduli_list,
                                           const ProbeOptions& opts = {});

/// not_invertible quotient-witness certificate from the first singular probe.
Certificate certify_by_quotients(const AlgebraElement& f,
                                 const std::vector<std::vector<std::int64_t>>& moduli_list,
                                 const ProbeOptions& opts = {});

/// {{lo,...,lo}, ..., {hi,...,hi}} for a rank-d lattice.
std::vector<std::vector<std::int64_t>> diagonal_moduli(int rank, std::int64_t lo, std::int64_t hi);

// ---------------------------------------------------------------------------

enum class Method { automatic, finite, wiener, fft, neumann };

struct InvertOptions {
  Method method = Method::automatic;
  std::optional<Element> pivot;
  int grid = 64;
  int fft_size = 512;
  int terms = 40;
  double tol = 1e-10;
};

/// Chooses an oracle by group kind: Cayley groups use the exact-size matrix,
/// unweighted Z^d uses the Wiener grid (then quotients and the Neumann
/// series), weighted lattices and free groups use the Neumann series.
Certificate invert(const AlgebraElement& f, const Weight* w, const InvertOptions& opts = {});

}  // namespace galab
