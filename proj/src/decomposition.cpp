#include "emsym/decomposition.hpp"

#include <stdexcept>
#include <string>

#include "emsym/factor.hpp"

namespace emsym {

QMatrix restrict_to_subspace(const QMatrix& h, const QMatrix& basis) {
  return solve_in_column_space(basis, h * basis);
}

FactorAction factor_action_on(const QMatrix& h, const QMatrix& basis) {
  const QMatrix r = restrict_to_subspace(h, basis);
  const QPolynomial mp = minimal_polynomial(r);
  const auto facs = factor_q(mp);
  if (facs.size() != 1)
    throw std::logic_error("factor_action_on: subspace is not primary");
  return {facs[0].factor, facs[0].multiplicity};
}

std::vector<PrimaryComponent> primary_decomposition(
    const std::vector<QMatrix>& family) {
  if (family.empty())
    throw std::invalid_argument("primary_decomposition: empty family");
  const std::size_t n = family[0].rows();
  for (const auto& m : family)
    if (!m.is_square() || m.rows() != n)
      throw std::invalid_argument("primary_decomposition: shape mismatch");
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!(family[i] * family[j] == family[j] * family[i]))
        throw std::invalid_argument(
            "primary_decomposition: family members " + std::to_string(i) +
            " and " + std::to_string(j) + " do not commute");

  if (n == 0) return {};
  std::vector<QMatrix> comps = {QMatrix::identity(n)};
  for (const auto& h : family) {
    std::vector<QMatrix> next;
    for (const auto& basis : comps) {
      const QMatrix r = restrict_to_subspace(h, basis);
      const QPolynomial mp = minimal_polynomial(r);
      const auto facs = factor_q(mp);
      if (facs.size() <= 1) {
        next.push_back(basis);
        continue;
      }
      for (const auto& [f, mult] : facs) {
        QMatrix img = f.eval(r);
        QMatrix power = img;
        for (int e = 1; e < mult; ++e) power = power * img;
        next.push_back(basis * kernel_basis(power));
      }
    }
    comps = std::move(next);
  }

  std::vector<PrimaryComponent> out;
  out.reserve(comps.size());
  for (const auto& basis : comps) {
    FactorAction fa = factor_action_on(family[0], basis);
    out.push_back({fa.factor, basis, fa.nilpotency});
  }
  return out;
}

} // namespace emsym
