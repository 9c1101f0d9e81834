#include "galab/algebra.hpp"

namespace galab {

template class BasicElement<Complex>;
template class BasicElement<ExactComplex>;

AlgebraElement to_float(const ExactElement& f) {
  AlgebraElement out(f.group());
  for (const auto& [x, c] : f.terms()) out.add_term(x, ScalarTraits<ExactComplex>::to_complex(c));
  return out;
}

ExactElement to_exact(const AlgebraElement& f) {
  ExactElement out(f.group());
  for (const auto& [x, c] : f.terms()) out.add_term(x, to_exact(c));
  return out;
}

}  // namespace galab
