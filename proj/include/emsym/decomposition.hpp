#ifndef EMSYM_DECOMPOSITION_HPP
#define EMSYM_DECOMPOSITION_HPP

#include <vector>

#include "emsym/qmatrix.hpp"
#include "emsym/qpolynomial.hpp"

namespace emsym {

// One simultaneous generalized eigenspace of a commuting family,
// rationalized over Q: `factor` is the irreducible factor of the first
// family member's minimal polynomial acting on this component, `basis`
// columns span the component, `nilpotency` is the least e with
// factor(h)^e = 0 on the component (h = first family member).
struct PrimaryComponent {
  QPolynomial factor;
  QMatrix basis;
  int nilpotency = 1;
};

// Simultaneous primary decomposition of a family of pairwise commuting
// square matrices. The component column spaces direct-sum to the ambient
// space; each component is invariant under every family member, and every
// family member acts on it with a single irreducible factor of its minimal
// polynomial. Throws std::invalid_argument naming the offending pair if two
// family members fail to commute exactly.
std::vector<PrimaryComponent> primary_decomposition(
    const std::vector<QMatrix>& family);

// Helpers shared with the Hecke layer.

// Matrix of h restricted to the invariant subspace spanned by basis columns.
QMatrix restrict_to_subspace(const QMatrix& h, const QMatrix& basis);

// Irreducible factor + nilpotency index of h acting on an invariant
// subspace on which h has a single irreducible minimal-polynomial factor.
struct FactorAction {
  QPolynomial factor;
  int nilpotency = 1;
};
FactorAction factor_action_on(const QMatrix& h, const QMatrix& basis);

} // namespace emsym

#endif
