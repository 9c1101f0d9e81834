#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <string>

#include <gmpxx.h>

namespace galab {

using Complex = std::complex<double>;

/// Complex number with arbitrary-precision rational real and imaginary parts.
struct ExactComplex {
  mpq_class re;
  mpq_class im;

  ExactComplex() : re(0), im(0) {}
  ExactComplex(mpq_class r) : re(std::move(r)), im(0) {}  // NOLINT: implicit by intent
  ExactComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(long v) : re(v), im(0) {}  // NOLINT

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Parses "p/q", "p" or a finite decimal such as "0.25" into an exact rational.
mpq_class parse_rational(const std::string& text);

/// Exact conversion: every finite double is a dyadic rational.
mpq_class exact_from_double(double v);

std::string to_string(const mpq_class& q);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {}; }
  static Complex one() { return {1.0, 0.0}; }
  static bool is_zero(const Complex& z) { return z == Complex{}; }
  static double abs(const Complex& z) { return std::abs(z); }
  static Complex from_double(double v) { return {v, 0.0}; }
  static Complex to_complex(const Complex& z) { return z; }
};

template <>
struct ScalarTraits<ExactComplex> {
  static constexpr bool exact = true;
  static ExactComplex zero() { return {}; }
  static ExactComplex one() { return ExactComplex(mpq_class(1)); }
  static bool is_zero(const ExactComplex& z) { return z.is_zero(); }
  static double abs(const ExactComplex& z) {
    if (sgn(z.im) == 0) return std::abs(z.re.get_d());
    return std::hypot(z.re.get_d(), z.im.get_d());
  }
  static ExactComplex from_double(double v) { return ExactComplex(exact_from_double(v)); }
  static Complex to_complex(const ExactComplex& z) { return {z.re.get_d(), z.im.get_d()}; }
};

template <class S>
concept FieldScalar = requires(S a, S b) {
  { ScalarTraits<S>::zero() } -> std::convertible_to<S>;
  { ScalarTraits<S>::is_zero(a) } -> std::convertible_to<bool>;
  { a + b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
};

ExactComplex to_exact(const Complex& z);

}  // namespace galab
