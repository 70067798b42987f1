#include "emsym/algebra.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace emsym {

namespace {

// Dense arithmetic in the truncated free algebra over s symbols: vectors
// indexed by monomials of length <= N in length-lex order.
struct FreeTrunc {
  long s = 0;
  int N = 1;
  std::vector<long> offset; // offset[d], plus total at the end
  std::vector<long> pow;    // s^d
  long total = 0;

  FreeTrunc(long s_, int N_, long cap) : s(s_), N(N_) {
    offset.assign(N + 2, 0);
    pow.assign(N + 1, 1);
    long pw = 1;
    for (int d = 0; d <= N; ++d) {
      pow[d] = pw;
      offset[d + 1] = offset[d] + pw;
      if (offset[d + 1] > cap)
        throw ResourceCapError(
            "ambient monomial count exceeds the configured cap; lower the "
            "truncation order");
      if (d < N) {
        if (s > 0 && pw > cap / s + 1)
          throw ResourceCapError(
              "ambient monomial count exceeds the configured cap; lower the "
              "truncation order");
        pw *= s;
      }
    }
    total = offset[N + 1];
  }

  int deg(long id) const {
    int d = 0;
    while (id >= offset[d + 1]) ++d;
    return d;
  }
  long concat(long u, int du, long v, int dv) const {
    return offset[du + dv] + (u - offset[du]) * pow[dv] + (v - offset[dv]);
  }
};

using Vec = std::vector<Rational>;

Vec ft_zero(const FreeTrunc& ft) { return Vec(ft.total); }

Vec ft_one(const FreeTrunc& ft) {
  Vec v(ft.total);
  v[0] = 1;
  return v;
}

Vec ft_mul(const FreeTrunc& ft, const Vec& a, const Vec& b) {
  Vec out(ft.total);
  for (int du = 0; du <= ft.N; ++du) {
    for (long u = ft.offset[du]; u < ft.offset[du + 1]; ++u) {
      if (a[u] == 0) continue;
      for (int dv = 0; dv + du <= ft.N; ++dv) {
        for (long v = ft.offset[dv]; v < ft.offset[dv + 1]; ++v) {
          if (b[v] == 0) continue;
          out[ft.concat(u, du, v, dv)] += a[u] * b[v];
        }
      }
    }
  }
  return out;
}

void ft_add_scaled(Vec& a, const Rational& s, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) a[i] += s * b[i];
}

// (1 + u)^{-1} = sum (-u)^k, truncated.
Vec ft_inverse_unit(const FreeTrunc& ft, const Vec& g) {
  Vec u = g;
  u[0] -= 1;
  Vec acc = ft_one(ft);
  Vec term = ft_one(ft);
  for (int k = 1; k <= ft.N; ++k) {
    term = ft_mul(ft, term, u);
    ft_add_scaled(acc, Rational((k % 2) ? -1 : 1), term);
  }
  return acc;
}

Vec ft_pow(const FreeTrunc& ft, Vec base, long e) {
  Vec r = ft_one(ft);
  while (e) {
    if (e & 1) r = ft_mul(ft, r, base);
    base = ft_mul(ft, base, base);
    e >>= 1;
  }
  return r;
}

// Evaluates a group word under unit images of the generators.
Vec ft_eval_word(const FreeTrunc& ft, const GroupWord& w,
                 const std::vector<Vec>& img, const std::vector<Vec>& img_inv) {
  Vec acc = ft_one(ft);
  for (const auto& l : w) {
    const Vec& base = l.exp > 0 ? img[l.gen] : img_inv[l.gen];
    acc = ft_mul(ft, acc, ft_pow(ft, base, l.exp > 0 ? l.exp : -l.exp));
  }
  return acc;
}

// Gaussian elimination on the exponent matrix with transform tracking.
// Row operations are restricted to the E-block so the transform rows stay
// valid combinations of the original rows.
struct ExponentElimination {
  std::vector<long> pivot_col;                 // per pivot row
  std::vector<std::vector<Rational>> erow;     // reduced E rows (pivot rows)
  std::vector<std::vector<Rational>> transform; // pivot-row transforms
  long rank = 0;
};

ExponentElimination eliminate_exponents(std::vector<std::vector<Rational>> e) {
  const std::size_t rows = e.size();
  const std::size_t cols = rows ? e[0].size() : 0;
  std::vector<std::vector<Rational>> w(rows, std::vector<Rational>(rows));
  for (std::size_t i = 0; i < rows; ++i) w[i][i] = 1;
  ExponentElimination out;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows; ++col) {
    std::size_t piv = lead;
    while (piv < rows && e[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(e[piv], e[lead]);
    std::swap(w[piv], w[lead]);
    const Rational inv = 1 / e[lead][col];
    for (auto& x : e[lead]) x *= inv;
    for (auto& x : w[lead]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead) continue;
      const Rational f = e[r][col];
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) e[r][j] -= f * e[lead][j];
      for (std::size_t j = 0; j < rows; ++j) w[r][j] -= f * w[lead][j];
    }
    out.pivot_col.push_back(static_cast<long>(col));
    ++lead;
  }
  out.rank = static_cast<long>(lead);
  for (std::size_t t = 0; t < lead; ++t) {
    out.erow.push_back(std::move(e[t]));
    out.transform.push_back(std::move(w[t]));
  }
  return out;
}

} // namespace

int AlgebraModel::degree_of_monomial(long id) const {
  int d = 0;
  while (id >= mono_offset[d + 1]) ++d;
  return d;
}

std::vector<int> AlgebraModel::monomial_digits(long id) const {
  const int d = degree_of_monomial(id);
  std::vector<int> digits(d);
  long rest = id - mono_offset[d];
  for (int i = d; i-- > 0;) {
    digits[i] = static_cast<int>(rest % num_symbols);
    rest /= num_symbols;
  }
  return digits;
}

ModelPtr build_model(std::shared_ptr<const GroupPresentation> pres, int N,
                     ModelMode mode, long ambient_cap) {
  if (N < 1) throw std::invalid_argument("build_model: truncation must be >= 1");
  const long r = pres->free_rank;
  const long c = pres->cusp_count;

  // Exponent sums of the parabolic words (abelianized cusp classes).
  std::vector<std::vector<Rational>> expmat(c, std::vector<Rational>(r));
  for (long ci = 0; ci < c; ++ci)
    for (const auto& l : pres->parabolic_words[ci])
      expmat[ci][l.gen] += Rational(l.exp);
  ExponentElimination elim = eliminate_exponents(expmat);

  std::vector<int> alphabet;
  std::vector<long> symbol_of_gen(r, -1);
  if (mode == ModelMode::Reduced) {
    if (elim.rank != c - 1)
      throw std::logic_error("build_model: unexpected parabolic rank");
    std::vector<bool> is_pivot(r, false);
    for (long p : elim.pivot_col) is_pivot[p] = true;
    for (long i = 0; i < r; ++i)
      if (!is_pivot[i]) {
        symbol_of_gen[i] = static_cast<long>(alphabet.size());
        alphabet.push_back(static_cast<int>(i));
      }
    if (static_cast<long>(alphabet.size()) != 2 * pres->genus)
      throw std::logic_error("build_model: alphabet size is not 2g");
  } else {
    for (long i = 0; i < r; ++i) {
      symbol_of_gen[i] = i;
      alphabet.push_back(static_cast<int>(i));
    }
  }

  const long s = static_cast<long>(alphabet.size());
  FreeTrunc ft(s, N, ambient_cap);

  // Unit images 1 + u_i per generator; in reduced mode the pivot tails are
  // solved degree by degree from the parabolic relations.
  std::vector<Vec> img(r, ft_zero(ft));
  for (long i = 0; i < r; ++i) {
    img[i][0] = 1;
    if (symbol_of_gen[i] >= 0 && s > 0)
      img[i][ft.offset[1] + symbol_of_gen[i]] = 1;
  }
  auto eval_all = [&]() {
    std::vector<Vec> inv(r);
    for (long i = 0; i < r; ++i) inv[i] = ft_inverse_unit(ft, img[i]);
    std::vector<Vec> res(c);
    for (long ci = 0; ci < c; ++ci) {
      res[ci] = ft_eval_word(ft, pres->parabolic_words[ci], img, inv);
      res[ci][0] -= 1;
    }
    return res;
  };

  if (mode == ModelMode::Reduced) {
    for (int d = 1; d <= N; ++d) {
      std::vector<Vec> res = eval_all();
      for (long t = 0; t < elim.rank; ++t) {
        const long j = elim.pivot_col[t];
        for (long id = ft.offset[d]; id < ft.offset[d + 1]; ++id) {
          Rational acc(0);
          for (long ci = 0; ci < c; ++ci)
            if (elim.transform[t][ci] != 0 && res[ci][id] != 0)
              acc += elim.transform[t][ci] * res[ci][id];
          if (acc != 0) img[j][id] -= acc;
        }
      }
    }
  }

  std::vector<Vec> residuals = eval_all();
  if (mode == ModelMode::Reduced) {
    // the pivot combinations must vanish identically now
    for (long t = 0; t < elim.rank; ++t) {
      Vec combo = ft_zero(ft);
      for (long ci = 0; ci < c; ++ci)
        if (elim.transform[t][ci] != 0)
          ft_add_scaled(combo, elim.transform[t][ci], residuals[ci]);
      for (const auto& x : combo)
        if (x != 0)
          throw std::logic_error("build_model: pivot relation failed to close");
    }
  }

  // Padded relation rows u . rho . v over the ambient monomials.
  std::vector<Vec> rows;
  for (const auto& rho : residuals) {
    int mindeg = -1;
    for (int d = 0; d <= N && mindeg < 0; ++d)
      for (long id = ft.offset[d]; id < ft.offset[d + 1]; ++id)
        if (rho[id] != 0) {
          mindeg = d;
          break;
        }
    if (mindeg < 0) continue; // relation already vanished
    for (int du = 0; du + mindeg <= N; ++du)
      for (int dv = 0; du + dv + mindeg <= N; ++dv)
        for (long u = ft.offset[du]; u < ft.offset[du + 1]; ++u)
          for (long v = ft.offset[dv]; v < ft.offset[dv + 1]; ++v) {
            Vec row = ft_zero(ft);
            for (int dm = 0; dm + du + dv <= N; ++dm)
              for (long mid = ft.offset[dm]; mid < ft.offset[dm + 1]; ++mid) {
                if (rho[mid] == 0) continue;
                row[ft.concat(ft.concat(u, du, mid, dm), du + dm, v, dv)] =
                    rho[mid];
              }
            rows.push_back(std::move(row));
          }
  }

  QMatrix ideal(rows.size(), ft.total);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (long j = 0; j < ft.total; ++j) ideal.at(i, j) = rows[i][j];
  RrefResult rr = rref(ideal);

  auto model = std::make_shared<AlgebraModel>();
  model->presentation = pres;
  model->truncation = N;
  model->mode = mode;
  model->alphabet = alphabet;
  model->num_symbols = s;
  model->mono_offset = ft.offset;
  model->sym_pow = ft.pow;
  model->mono_count = ft.total;
  model->mono_to_basis.assign(ft.total, -1);
  model->reduction.assign(ft.total, {});
  std::vector<bool> pivot(ft.total, false);
  for (std::size_t k = 0; k < rr.pivot_cols.size(); ++k)
    pivot[rr.pivot_cols[k]] = true;
  for (long id = 0; id < ft.total; ++id)
    if (!pivot[id]) {
      model->mono_to_basis[id] = static_cast<long>(model->basis.size());
      model->basis.push_back(id);
      model->basis_degree.push_back(ft.deg(id));
    }
  for (std::size_t k = 0; k < rr.pivot_cols.size(); ++k) {
    const long id = rr.pivot_cols[k];
    std::vector<std::pair<long, Rational>> expr;
    for (long j = 0; j < ft.total; ++j) {
      if (pivot[j]) continue;
      const Rational& cval = rr.reduced.at(k, j);
      if (cval != 0) expr.emplace_back(model->mono_to_basis[j], -cval);
    }
    model->reduction[id] = std::move(expr);
  }
  model->graded_dims.assign(N + 1, 0);
  for (int d : model->basis_degree) ++model->graded_dims[d];
  if (model->graded_dims[0] != 1)
    throw std::logic_error("build_model: unit monomial eliminated");
  if (mode == ModelMode::Reduced && model->graded_dims[1] != s)
    throw std::logic_error("build_model: degree-1 dimension is not 2g");

  // Generator images in basis coordinates.
  auto reduce_vec = [&](const Vec& v) {
    std::vector<Rational> out(model->basis.size());
    for (long id = 0; id < ft.total; ++id) {
      if (v[id] == 0) continue;
      const long b = model->mono_to_basis[id];
      if (b >= 0) {
        out[b] += v[id];
      } else {
        for (const auto& [bi, cf] : model->reduction[id]) out[bi] += v[id] * cf;
      }
    }
    return out;
  };
  for (long i = 0; i < r; ++i) model->gen_image.push_back(reduce_vec(img[i]));

  ModelPtr mp = model;
  for (long i = 0; i < r; ++i) {
    AlgebraElement e{mp, model->gen_image[i]};
    model->gen_image_inv.push_back(inverse_grouplike(e).coeffs);
  }
  return mp;
}

// --- element operations -----------------------------------------------------

namespace {

void require_same_model(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.model.get() != y.model.get())
    throw std::invalid_argument("algebra elements belong to different models");
}

} // namespace

bool AlgebraElement::is_zero() const {
  for (const auto& c : coeffs)
    if (c != 0) return false;
  return true;
}

AlgebraElement zero_element(ModelPtr m) {
  return {m, std::vector<Rational>(m->basis.size())};
}

AlgebraElement one_element(ModelPtr m) {
  AlgebraElement e = zero_element(m);
  e.coeffs[0] = 1;
  return e;
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_model(x, y);
  AlgebraElement out = x;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += y.coeffs[i];
  return out;
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_model(x, y);
  AlgebraElement out = x;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= y.coeffs[i];
  return out;
}

AlgebraElement operator*(const Rational& s, const AlgebraElement& x) {
  AlgebraElement out = x;
  for (auto& c : out.coeffs) c *= s;
  return out;
}

AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_model(x, y);
  const AlgebraModel& m = *x.model;
  AlgebraElement out = zero_element(x.model);
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i] == 0) continue;
    const int di = m.basis_degree[i];
    for (std::size_t j = 0; j < y.coeffs.size(); ++j) {
      if (y.coeffs[j] == 0) continue;
      const int dj = m.basis_degree[j];
      if (di + dj > m.truncation) continue;
      const Rational prod = x.coeffs[i] * y.coeffs[j];
      const long id = m.concat_id(m.basis[i], di, m.basis[j], dj);
      const long bidx = m.mono_to_basis[id];
      if (bidx >= 0) {
        out.coeffs[bidx] += prod;
      } else {
        for (const auto& [bk, cf] : m.reduction[id]) out.coeffs[bk] += prod * cf;
      }
    }
  }
  return out;
}

AlgebraElement phi(const GroupWord& w, ModelPtr m) {
  AlgebraElement acc = one_element(m);
  for (const auto& l : w) {
    AlgebraElement base{
        m, l.exp > 0 ? m->gen_image[l.gen] : m->gen_image_inv[l.gen]};
    long e = l.exp > 0 ? l.exp : -l.exp;
    AlgebraElement pw = one_element(m);
    while (e) {
      if (e & 1) pw = mul(pw, base);
      base = mul(base, base);
      e >>= 1;
    }
    acc = mul(acc, pw);
  }
  return acc;
}

AlgebraElement phi_matrix(const GL2Matrix& g, ModelPtr m) {
  return phi(word_problem(g, *m->presentation), m);
}

AlgebraElement log_element(const AlgebraElement& g) {
  if (g.augmentation() != 1)
    throw std::invalid_argument("log: element is not 1 modulo the augmentation ideal");
  const int N = g.model->truncation;
  AlgebraElement u = g - one_element(g.model);
  AlgebraElement acc = zero_element(g.model);
  AlgebraElement term = one_element(g.model);
  for (int k = 1; k <= N; ++k) {
    term = mul(term, u);
    acc = acc + Rational((k % 2) ? 1 : -1, k) * term;
  }
  return acc;
}

AlgebraElement exp_element(const AlgebraElement& a) {
  if (a.augmentation() != 0)
    throw std::invalid_argument("exp: element is not in the augmentation ideal");
  const int N = a.model->truncation;
  AlgebraElement acc = one_element(a.model);
  AlgebraElement term = one_element(a.model);
  for (int k = 1; k <= N; ++k) {
    term = Rational(1, k) * mul(term, a);
    acc = acc + term;
  }
  return acc;
}

AlgebraElement inverse_grouplike(const AlgebraElement& g) {
  if (g.augmentation() != 1)
    throw std::invalid_argument("inverse: element is not 1 modulo the augmentation ideal");
  const int N = g.model->truncation;
  AlgebraElement u = g - one_element(g.model);
  AlgebraElement acc = one_element(g.model);
  AlgebraElement term = one_element(g.model);
  for (int k = 1; k <= N; ++k) {
    term = mul(term, u);
    acc = acc + Rational((k % 2) ? -1 : 1) * term;
  }
  return acc;
}

// --- comultiplication -------------------------------------------------------

namespace {

// Tensor-square elements as sparse maps over basis index pairs, truncated by
// total degree.
using SparseTensor = std::map<std::pair<long, long>, Rational>;

// Normal form of b_i * b_j as a sparse list (direct concat + table lookup).
std::vector<std::pair<long, Rational>> basis_product(const AlgebraModel& m,
                                                     long i, long j) {
  const int di = m.basis_degree[i], dj = m.basis_degree[j];
  if (di + dj > m.truncation) return {};
  const long id = m.concat_id(m.basis[i], di, m.basis[j], dj);
  const long b = m.mono_to_basis[id];
  if (b >= 0) return {{b, Rational(1)}};
  return m.reduction[id];
}

void tensor_add(const AlgebraModel& m, SparseTensor& acc, long i, long j,
                const Rational& v) {
  if (m.basis_degree[i] + m.basis_degree[j] > m.truncation) return;
  auto it = acc.emplace(std::pair{i, j}, Rational(0)).first;
  it->second += v;
  if (it->second == 0) acc.erase(it);
}

SparseTensor tensor_mul(const AlgebraModel& m, const SparseTensor& a,
                        const SparseTensor& b) {
  SparseTensor out;
  for (const auto& [ij1, c1] : a)
    for (const auto& [ij2, c2] : b) {
      const auto left = basis_product(m, ij1.first, ij2.first);
      if (left.empty()) continue;
      const auto right = basis_product(m, ij1.second, ij2.second);
      if (right.empty()) continue;
      const Rational s = c1 * c2;
      for (const auto& [bi, cf1] : left)
        for (const auto& [bj, cf2] : right) tensor_add(m, out, bi, bj, s * cf1 * cf2);
    }
  return out;
}

SparseTensor outer(const AlgebraModel& m, const std::vector<Rational>& x,
                   const std::vector<Rational>& y) {
  SparseTensor out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      tensor_add(m, out, long(i), long(j), x[i] * y[j]);
    }
  }
  return out;
}

SparseTensor comultiply_sparse(const AlgebraElement& x) {
  const AlgebraModel& m = *x.model;
  ModelPtr mp = x.model;
  // Delta on a symbol y: y x 1 + 1 x y + y x y, in basis coordinates.
  std::vector<SparseTensor> delta_sym(m.num_symbols);
  std::vector<Rational> unit(m.basis.size());
  unit[0] = 1;
  for (long k = 0; k < m.num_symbols; ++k) {
    std::vector<Rational> yk(m.basis.size());
    const long id = m.mono_offset[1] + k;
    if (m.mono_to_basis[id] >= 0) {
      yk[m.mono_to_basis[id]] = 1;
    } else {
      for (const auto& [bi, cf] : m.reduction[id]) yk[bi] += cf;
    }
    SparseTensor t = outer(m, yk, unit);
    for (const auto& [ij, v] : outer(m, unit, yk)) tensor_add(m, t, ij.first, ij.second, v);
    for (const auto& [ij, v] : outer(m, yk, yk)) tensor_add(m, t, ij.first, ij.second, v);
    delta_sym[k] = std::move(t);
  }

  SparseTensor acc;
  for (std::size_t b = 0; b < x.coeffs.size(); ++b) {
    if (x.coeffs[b] == 0) continue;
    SparseTensor t;
    t[{0, 0}] = 1;
    for (int dig : m.monomial_digits(m.basis[b])) t = tensor_mul(m, t, delta_sym[dig]);
    for (const auto& [ij, v] : t) tensor_add(m, acc, ij.first, ij.second, x.coeffs[b] * v);
  }
  return acc;
}

} // namespace

TensorElement comultiply(const AlgebraElement& x) {
  TensorElement out;
  for (const auto& [ij, v] : comultiply_sparse(x)) out.push_back({ij, v});
  return out;
}

bool is_grouplike(const AlgebraElement& x) {
  if (x.augmentation() != 1) return false;
  const AlgebraModel& m = *x.model;
  SparseTensor expect = outer(m, x.coeffs, x.coeffs);
  return comultiply_sparse(x) == expect;
}

bool is_primitive(const AlgebraElement& x) {
  if (x.augmentation() != 0) return false;
  const AlgebraModel& m = *x.model;
  std::vector<Rational> unit(m.basis.size());
  unit[0] = 1;
  SparseTensor expect = outer(m, x.coeffs, unit);
  for (const auto& [ij, v] : outer(m, unit, x.coeffs))
    tensor_add(m, expect, ij.first, ij.second, v);
  return comultiply_sparse(x) == expect;
}

AlgebraElement t_th_root(const AlgebraElement& g, long t) {
  if (t < 1) throw std::invalid_argument("t_th_root: t must be >= 1");
  if (!is_grouplike(g))
    throw std::invalid_argument("t_th_root: element is not grouplike");
  if (t == 1) return g;
  return exp_element(Rational(1, t) * log_element(g));
}

std::vector<long> filtration_dims(const AlgebraModel& m) {
  return m.graded_dims;
}

AlgebraElement project_grade(const AlgebraElement& x, int grade) {
  if (grade < 0 || grade > x.model->truncation)
    throw std::invalid_argument("project_grade: grade out of range");
  AlgebraElement out = zero_element(x.model);
  for (std::size_t i = 0; i < x.coeffs.size(); ++i)
    if (x.model->basis_degree[i] == grade) out.coeffs[i] = x.coeffs[i];
  return out;
}

AlgebraElement symbol_to_element(const CuspPoint& a, const CuspPoint& b,
                                 const CuspClass& cls, ModelPtr m) {
  const GroupPresentation& pres = *m->presentation;
  auto [ca, wa] = cusp_reduce(a, pres.level, pres.cusps);
  auto [cb, wb] = cusp_reduce(b, pres.level, pres.cusps);
  if (ca.id != cls.id || cb.id != cls.id)
    throw std::invalid_argument("symbol endpoints are not in the given cusp class");
  return phi_matrix(wa.inv_sl2() * wb, m);
}

QMatrix algebra_hom_matrix(const AlgebraModel& m,
                           const std::vector<AlgebraElement>& symbol_images) {
  if (static_cast<long>(symbol_images.size()) != m.num_symbols)
    throw std::invalid_argument("algebra_hom_matrix: one image per symbol required");
  if (m.num_symbols == 0) return QMatrix::identity(m.basis.size());
  ModelPtr mp = symbol_images[0].model;
  QMatrix out(m.basis.size(), m.basis.size());
  for (std::size_t col = 0; col < m.basis.size(); ++col) {
    AlgebraElement img = one_element(mp);
    for (int dig : m.monomial_digits(m.basis[col]))
      img = mul(img, symbol_images[dig] - one_element(mp));
    for (std::size_t row = 0; row < img.coeffs.size(); ++row)
      out.at(row, col) = img.coeffs[row];
  }
  return out;
}

std::string model_to_json(const AlgebraModel& m) {
  nlohmann::json j;
  j["schema"] = 1;
  j["level"] = m.presentation->level;
  j["truncation"] = m.truncation;
  j["mode"] = m.mode == ModelMode::Reduced ? "reduced" : "full";
  j["presentation_hash"] = presentation_hash(*m.presentation);
  j["alphabet"] = m.alphabet;
  nlohmann::json basis = nlohmann::json::array();
  for (long id : m.basis) basis.push_back(m.monomial_digits(id));
  j["basis"] = basis;
  j["graded_dims"] = m.graded_dims;
  nlohmann::json red = nlohmann::json::array();
  for (long id = 0; id < m.mono_count; ++id) {
    if (m.mono_to_basis[id] >= 0) continue;
    nlohmann::json row;
    row["monomial"] = m.monomial_digits(id);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [bi, cf] : m.reduction[id])
      terms.push_back({bi, rational_to_string(cf)});
    row["expr"] = terms;
    red.push_back(row);
  }
  j["reduction"] = red;
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& gi : m.gen_image) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& c : gi) v.push_back(rational_to_string(c));
    gens.push_back(v);
  }
  j["generator_images"] = gens;
  return j.dump();
}

} // namespace emsym
