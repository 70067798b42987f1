#ifndef EMSYM_POLYROOTS_HPP
#define EMSYM_POLYROOTS_HPP

#include <vector>

#include "emsym/numeric.hpp"
#include "emsym/qpolynomial.hpp"

namespace emsym {

// All complex roots of a square-free polynomial (Durand-Kerner, MPFR).
std::vector<Complex> poly_roots_squarefree(const QPolynomial& f, long prec_bits);

struct RootModulus {
  double modulus = 0.0;
  double error = 0.0;
  int multiplicity = 1;
};

// Root moduli of an arbitrary nonzero polynomial: factor into irreducibles
// first, then locate the (simple) roots of each factor. Error bounds come
// from a Newton residual estimate.
std::vector<RootModulus> root_moduli(const QPolynomial& f, long prec_bits = 256);

} // namespace emsym

#endif
