#ifndef EMSYM_FACTOR_HPP
#define EMSYM_FACTOR_HPP

#include <vector>

#include "emsym/qpolynomial.hpp"

namespace emsym {

struct IrreducibleFactor {
  QPolynomial factor; // monic, irreducible over Q
  int multiplicity = 0;
};

// Complete factorization over Q into monic irreducibles.
// Pipeline: content/unit split, square-free decomposition (Yun), then
// Zassenhaus per square-free part: Berlekamp mod a small prime, multifactor
// Hensel lifting past the Landau-Mignotte bound, subset recombination.
// Output order: ascending degree, then lexicographic on coefficient lists.
// Throws std::invalid_argument on the zero polynomial.
std::vector<IrreducibleFactor> factor_q(const QPolynomial& p);

// Minimal polynomial of a square matrix (monic), via Krylov subspaces.
QPolynomial minimal_polynomial(const QMatrix& m);

} // namespace emsym

#endif
