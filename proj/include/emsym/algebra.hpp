#ifndef EMSYM_ALGEBRA_HPP
#define EMSYM_ALGEBRA_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "emsym/presentation.hpp"
#include "emsym/qmatrix.hpp"

namespace emsym {

// Thrown when a construction would exceed the configured ambient size cap.
struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ModelMode {
  // Alphabet of one symbol per generator; parabolic expansions reduced by
  // plain linear algebra. Only viable for small rank/truncation.
  Full,
  // Parabolic generators eliminated first: alphabet of 2g symbols carrying
  // the single induced relation. The default.
  Reduced,
};

// Truncated group algebra of the quotient of Gamma(n) by its parabolic
// normal closure, in normal form: monomials of length <= N over the
// alphabet, reduced against the padded relation ideal. The length
// filtration is coordinate-aligned: normal forms of degree-d monomials only
// involve basis monomials of degree >= d.
struct AlgebraModel {
  std::shared_ptr<const GroupPresentation> presentation;
  int truncation = 1;
  ModelMode mode = ModelMode::Reduced;

  std::vector<int> alphabet;   // presentation generator index per symbol
  long num_symbols = 0;
  std::vector<long> mono_offset; // per degree
  std::vector<long> sym_pow;     // num_symbols^d
  long mono_count = 0;

  std::vector<long> basis;        // monomial ids, length-lex ascending
  std::vector<int> basis_degree;  // degree of each basis monomial
  std::vector<long> mono_to_basis; // basis index or -1
  // For non-basis monomials: expression over basis indices.
  std::vector<std::vector<std::pair<long, Rational>>> reduction;
  std::vector<long> graded_dims; // dim I^m / I^{m+1}, m = 0..N

  // Images of phi on presentation generators and their inverses, as
  // coefficient vectors over the basis.
  std::vector<std::vector<Rational>> gen_image;
  std::vector<std::vector<Rational>> gen_image_inv;

  long dim() const { return static_cast<long>(basis.size()); }
  int degree_of_monomial(long id) const;
  std::vector<int> monomial_digits(long id) const;
  long concat_id(long u, int du, long v, int dv) const {
    return mono_offset[du + dv] + (u - mono_offset[du]) * sym_pow[dv] +
           (v - mono_offset[dv]);
  }
};

using ModelPtr = std::shared_ptr<const AlgebraModel>;

ModelPtr build_model(std::shared_ptr<const GroupPresentation> pres, int N,
                     ModelMode mode = ModelMode::Reduced,
                     long ambient_cap = 2'000'000);

struct AlgebraElement {
  ModelPtr model;
  std::vector<Rational> coeffs;

  bool operator==(const AlgebraElement& o) const { return coeffs == o.coeffs; }
  bool is_zero() const;
  // Coefficient of the empty monomial (the augmentation).
  Rational augmentation() const { return coeffs.at(0); }
};

AlgebraElement zero_element(ModelPtr m);
AlgebraElement one_element(ModelPtr m);
AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator*(const Rational& s, const AlgebraElement& x);
AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y);

AlgebraElement phi(const GroupWord& w, ModelPtr m);
AlgebraElement phi_matrix(const GL2Matrix& g, ModelPtr m); // word_problem + phi

// Truncated series; preconditions are exact (augmentation 1 resp. 0).
AlgebraElement log_element(const AlgebraElement& g);
AlgebraElement exp_element(const AlgebraElement& a);
AlgebraElement inverse_grouplike(const AlgebraElement& g);

// Coefficient table over basis x basis, truncated by total degree.
using TensorElement = std::vector<std::pair<std::pair<long, long>, Rational>>;
TensorElement comultiply(const AlgebraElement& x);
bool is_grouplike(const AlgebraElement& x);
bool is_primitive(const AlgebraElement& x);

// Grouplike t-th root, unique among grouplikes.
AlgebraElement t_th_root(const AlgebraElement& g, long t);

std::vector<long> filtration_dims(const AlgebraModel& m);
AlgebraElement project_grade(const AlgebraElement& x, int grade);

// phi of the loop witnessing [a, b] at the canonical base point of `cls`.
AlgebraElement symbol_to_element(const CuspPoint& a, const CuspPoint& b,
                                 const CuspClass& cls, ModelPtr m);

// Matrix (dim x dim) of the unital algebra endomorphism sending the k-th
// alphabet symbol's grouplike 1 + y_k to `symbol_images[k]`.
QMatrix algebra_hom_matrix(const AlgebraModel& m,
                           const std::vector<AlgebraElement>& symbol_images);

std::string model_to_json(const AlgebraModel& m);

} // namespace emsym

#endif
