#include "galab/scalar.hpp"

#include <cctype>

#include "galab/error.hpp"

namespace galab {

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  if (o.is_zero()) throw UsageError("exact division by zero");
  if (sgn(o.im) == 0) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  const mpq_class den = o.re * o.re + o.im * o.im;
  mpq_class r = (re * o.re + im * o.im) / den;
  mpq_class i = (im * o.re - re * o.im) / den;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

mpq_class parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw UsageError("empty rational literal");

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos)
      throw UsageError("unsupported rational literal '" + text + "'");
    const bool signed_literal = s[0] == '-' || s[0] == '+';
    const bool negative = s[0] == '-';
    const std::size_t start = signed_literal ? 1 : 0;
    const std::string int_part = s.substr(start, dot - start);
    const std::string frac_part = s.substr(dot + 1);
    std::string digits = int_part + frac_part;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("malformed decimal '" + text + "'");
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    mpq_class q(num, den);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
  }

  mpq_class q;
  if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
    throw UsageError("malformed rational '" + text + "'");
  if (sgn(q.get_den()) == 0) throw UsageError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

mpq_class exact_from_double(double v) {
  if (!std::isfinite(v)) throw UsageError("non-finite value cannot be made exact");
  mpq_class q(v);
  q.canonicalize();
  return q;
}

std::string to_string(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return c.get_str(10);
}

ExactComplex to_exact(const Complex& z) {
  return {exact_from_double(z.real()), exact_from_double(z.imag())};
}

}  // namespace galab
