#ifndef EMSYM_HECKE_HPP
#define EMSYM_HECKE_HPP

#include <map>
#include <string>
#include <vector>

#include "emsym/algebra.hpp"
#include "emsym/decomposition.hpp"
#include "emsym/polyroots.hpp"

namespace emsym {

enum class HeckeKind { Tp, Tpp };

std::string kind_name(HeckeKind k);

// Index of one summand of V: a unit k mod n (the root-of-unity exponent;
// determinant d acts by k -> d k) and a cusp class.
struct SummandIndex {
  long k = 1;
  long cusp = 0;
  bool operator==(const SummandIndex&) const = default;
};

// Hecke datum: the correspondence matrix g = diag(1, p) or p*id, its
// determinant, and the shared algebra model.
struct HeckeContext {
  ModelPtr model;
  HeckeKind kind = HeckeKind::Tp;
  long p = 0;
  long det = 0;
  GL2Matrix g;

  HeckeContext(ModelPtr model_, HeckeKind kind_, long p_);
  long level() const { return model->presentation->level; }
};

// gamma in Gamma(n) with g gamma g^{-1} integral and in Gamma(n).
bool in_gamma_ng(const GL2Matrix& gamma, long n, const GL2Matrix& g);

// Right-coset representatives of Gamma(n, g) in Gamma(n): BFS over
// generator multiplication, terminated by the closure property.
std::vector<GL2Matrix> coset_reps(long n, const GL2Matrix& g,
                                  const GroupPresentation& pres);

// Least t >= 1 with gamma^t in Gamma(n, g); the search runs on reductions
// mod det(g)*n. Throws std::runtime_error past the cap.
long exponent_t(const GL2Matrix& gamma, long n, const GL2Matrix& g,
                long cap = 1'000'000);

// The image of the symbol [a_j, gamma(a_j)] under the local map: transport
// to the canonical base point of the target class, then the t-th root
// exp((1/t) log phi(...)) of the pushed-forward loop.
AlgebraElement local_symbol_image(const HeckeContext& ctx, const CuspPoint& a_j,
                                  const GL2Matrix& gamma);

// The full local homomorphism at a_j as a matrix on A_N, with its target
// cusp class (class of g(a_j)).
struct LocalHom {
  long source_cusp = 0;
  long target_cusp = 0;
  QMatrix matrix;
};
LocalHom hecke_local_hom(const HeckeContext& ctx, const CuspPoint& a_j,
                         long source_cusp);

// Applies the local map to one element: (target summand, image).
std::pair<SummandIndex, AlgebraElement> hecke_local(const HeckeContext& ctx,
                                                    const CuspPoint& a_j,
                                                    const AlgebraElement& x,
                                                    const SummandIndex& source);

// Global operator on V as a block matrix over summands.
struct HeckeOperator {
  long level = 0;
  int truncation = 1;
  HeckeKind kind = HeckeKind::Tp;
  long p = 0;
  long det = 0;
  ModelPtr model;
  std::vector<long> units; // ascending units mod n
  long cusp_count = 0;
  std::map<std::pair<long, long>, QMatrix> blocks; // (src, tgt) summands

  long summand_dim() const { return model->dim(); }
  long summand_count() const {
    return static_cast<long>(units.size()) * cusp_count;
  }
  long total_dim() const { return summand_count() * summand_dim(); }
  long summand_of(long k, long cusp) const;
};

HeckeOperator hecke_operator(ModelPtr model, HeckeKind kind, long p,
                             const std::vector<GL2Matrix>* base_twists = nullptr);

QMatrix assemble(const HeckeOperator& h);
// Sub-matrix on coordinates of grade >= min_grade (the I^m part of V).
QMatrix part_matrix(const HeckeOperator& h, int min_grade);
// Block induced on I^m / I^{m+1}.
QMatrix grade_matrix(const HeckeOperator& h, int grade);
// Exact check that all I^m are preserved.
bool preserves_filtration(const HeckeOperator& h);
// Exact check of the augmentation mass (p + 1 for Tp, 1 for Tpp).
bool augmentation_mass_ok(const HeckeOperator& h);

std::string hecke_to_json(const HeckeOperator& h);

// --- Hecke components -------------------------------------------------------

struct HeckeComponent {
  QMatrix basis; // coordinates in the I-part of V
  std::vector<QPolynomial> op_factors;
  std::vector<int> op_nilpotency;
  std::vector<int> grades_met;
  std::vector<std::pair<int, long>> filtration_dims; // (m, dim of W cap I^m)
  bool dichotomy_ok = true;
};

struct ComponentReport {
  long level = 0;
  int truncation = 1;
  std::vector<long> primes;
  std::vector<std::string> op_names;
  long ambient_dim = 0;
  std::vector<HeckeComponent> components;
  bool coarse_warning = false;
  bool dichotomy_pass = true;
};

// Primary decomposition of the commuting family {E(T(p)), E(T(p,p))} on the
// augmentation-ideal part of V. Throws std::invalid_argument naming the
// offending operators when exact commutativity fails.
ComponentReport hecke_components(ModelPtr model, const std::vector<long>& primes);

// The filtration dichotomy: every component meets each I^m in 0 or itself.
struct DichotomyReport {
  bool pass = true;
  bool coarse_warning = false;
  ComponentReport detail;
};
DichotomyReport verify_dichotomy(ModelPtr model, const std::vector<long>& primes);

// Characteristic polynomial of the operator induced on I^m/I^{m+1},
// with numeric root moduli. Checks filtration preservation first.
struct GradeSpectrum {
  QPolynomial charpoly;
  std::vector<RootModulus> moduli;
};
GradeSpectrum grade_spectrum(ModelPtr model, HeckeKind kind, long p, int grade);

// dim of (column span of basis) intersected with the span of the
// coordinates of grade >= m; exact. Used by the dichotomy verdicts and by
// their negative-control harness.
long filtration_intersection_dim(const QMatrix& basis,
                                 const std::vector<int>& coord_grades, int m);

std::string component_report_to_json(const ComponentReport& r);

} // namespace emsym

#endif
