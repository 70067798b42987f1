#include "emsym/hecke.hpp"

#include <queue>
#include <stdexcept>

#include <json.hpp>

namespace emsym {

namespace {

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long gcd_long(long a, long b) {
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

GL2Matrix adjugate(const GL2Matrix& g) {
  return GL2Matrix(g.d, -g.b, -g.c, g.a);
}

// (g * m * adj g) / det, when integral.
bool conjugate_by_g(const GL2Matrix& g, const GL2Matrix& m, const Integer& det,
                    GL2Matrix& out) {
  GL2Matrix x = g * m * adjugate(g);
  if (x.a % det != 0 || x.b % det != 0 || x.c % det != 0 || x.d % det != 0)
    return false;
  out = GL2Matrix(x.a / det, x.b / det, x.c / det, x.d / det);
  return true;
}

GL2Matrix mod_reduce(const GL2Matrix& m, long modulus) {
  auto red = [&](const Integer& z) {
    Integer r = z % modulus;
    if (r < 0) r += modulus;
    return r;
  };
  return GL2Matrix(red(m.a), red(m.b), red(m.c), red(m.d));
}

} // namespace

std::string kind_name(HeckeKind k) { return k == HeckeKind::Tp ? "Tp" : "Tpp"; }

HeckeContext::HeckeContext(ModelPtr model_, HeckeKind kind_, long p_)
    : model(std::move(model_)), kind(kind_), p(p_) {
  const long n = model->presentation->level;
  if (!is_prime_long(p)) throw std::invalid_argument("Hecke prime is not prime");
  if (gcd_long(p, n) != 1)
    throw std::invalid_argument("Hecke prime divides the level");
  if (kind == HeckeKind::Tp) {
    g = GL2Matrix::from_longs(1, 0, 0, p);
    det = p;
  } else {
    g = GL2Matrix::from_longs(p, 0, 0, p);
    det = p * p;
  }
}

bool in_gamma_ng(const GL2Matrix& gamma, long n, const GL2Matrix& g) {
  if (!in_gamma_n(gamma, n)) return false;
  GL2Matrix conj;
  if (!conjugate_by_g(g, gamma, g.det(), conj)) return false;
  return in_gamma_n(conj, n);
}

std::vector<GL2Matrix> coset_reps(long n, const GL2Matrix& g,
                                  const GroupPresentation& pres) {
  std::vector<GL2Matrix> reps = {GL2Matrix::identity()};
  auto known = [&](const GL2Matrix& cand) {
    for (const auto& r : reps)
      if (in_gamma_ng(cand * r.inv_sl2(), n, g)) return true;
    return false;
  };
  for (std::size_t head = 0; head < reps.size(); ++head) {
    const GL2Matrix cur = reps[head];
    for (const auto& h : pres.generators)
      for (int sgn : {1, -1}) {
        GL2Matrix cand = cur * (sgn > 0 ? h : h.inv_sl2());
        if (!known(cand)) reps.push_back(cand);
      }
  }
  // closure: every one-step neighbour lies in a found coset
  for (const auto& r : reps)
    for (const auto& h : pres.generators)
      for (int sgn : {1, -1})
        if (!known(r * (sgn > 0 ? h : h.inv_sl2())))
          throw std::logic_error("coset_reps: enumeration failed to close");
  return reps;
}

long exponent_t(const GL2Matrix& gamma, long n, const GL2Matrix& g, long cap) {
  if (!in_gamma_n(gamma, n))
    throw std::invalid_argument("exponent_t: matrix is not in Gamma(n)");
  const Integer det = g.det();
  const long dn = static_cast<long>(det.get_si()) * n;
  const GL2Matrix base = mod_reduce(gamma, dn);
  GL2Matrix cur = base;
  const Integer target = det % dn;
  for (long t = 1; t <= cap; ++t) {
    GL2Matrix x = mod_reduce(g * cur * adjugate(g), dn);
    if (x.a == target && x.b == 0 && x.c == 0 && x.d == target) return t;
    cur = mod_reduce(cur * base, dn);
  }
  throw std::runtime_error("exponent_t: cap exceeded");
}

namespace {

// exp((1/t) log phi(w^{-1} (g gamma_t g^{-1}) w)) for gamma_t = gamma^t in
// Gamma(n, g), transported to the canonical base point of the target class.
AlgebraElement local_image_from_power(const HeckeContext& ctx,
                                      const CuspPoint& a_j, long t,
                                      const GL2Matrix& gamma_t) {
  const long n = ctx.level();
  GL2Matrix delta;
  if (!conjugate_by_g(ctx.g, gamma_t, Integer(ctx.det), delta))
    throw std::logic_error("hecke_local: conjugate is not integral");
  if (!in_gamma_n(delta, n))
    throw std::logic_error("hecke_local: conjugate left Gamma(n)");
  const CuspPoint target_pt = act(ctx.g, a_j);
  auto [beta, w] = cusp_reduce(target_pt, n, ctx.model->presentation->cusps);
  const GL2Matrix u = w.inv_sl2() * delta * w;
  return exp_element(Rational(1, t) * log_element(phi_matrix(u, ctx.model)));
}

} // namespace

AlgebraElement local_symbol_image(const HeckeContext& ctx, const CuspPoint& a_j,
                                  const GL2Matrix& gamma) {
  const long t = exponent_t(gamma, ctx.level(), ctx.g);
  return local_image_from_power(ctx, a_j, t, gamma.pow(t));
}

LocalHom hecke_local_hom(const HeckeContext& ctx, const CuspPoint& a_j,
                         long source_cusp) {
  const long n = ctx.level();
  const GroupPresentation& pres = *ctx.model->presentation;
  auto [cls, gj] = cusp_reduce(a_j, n, pres.cusps);
  if (cls.id != source_cusp)
    throw std::invalid_argument("hecke_local: point is not in the source class");
  const CuspPoint target_pt = act(ctx.g, a_j);
  const long target_cusp = cusp_reduce(target_pt, n, pres.cusps).first.id;
  const GL2Matrix gj_inv = gj.inv_sl2();

  std::vector<AlgebraElement> images;
  images.reserve(ctx.model->alphabet.size());
  for (int gen : ctx.model->alphabet) {
    const GL2Matrix& h = pres.generators[gen];
    const long t = exponent_t(gj * h * gj_inv, n, ctx.g);
    // (gj h gj^-1)^t = gj h^t gj^-1 keeps the entries small
    AlgebraElement img =
        local_image_from_power(ctx, a_j, t, gj * h.pow(t) * gj_inv);
    if (!is_grouplike(img))
      throw std::logic_error("hecke_local: image lost grouplikeness");
    images.push_back(std::move(img));
  }
  return {source_cusp, target_cusp, algebra_hom_matrix(*ctx.model, images)};
}

std::pair<SummandIndex, AlgebraElement> hecke_local(const HeckeContext& ctx,
                                                    const CuspPoint& a_j,
                                                    const AlgebraElement& x,
                                                    const SummandIndex& source) {
  if (x.model.get() != ctx.model.get())
    throw std::invalid_argument("hecke_local: element model mismatch");
  const long n = ctx.level();
  LocalHom lh = hecke_local_hom(ctx, a_j, source.cusp);
  SummandIndex target{((ctx.det % n) * source.k) % n, lh.target_cusp};
  AlgebraElement out = zero_element(ctx.model);
  for (std::size_t r = 0; r < out.coeffs.size(); ++r)
    for (std::size_t c = 0; c < x.coeffs.size(); ++c)
      if (lh.matrix.at(r, c) != 0 && x.coeffs[c] != 0)
        out.coeffs[r] += lh.matrix.at(r, c) * x.coeffs[c];
  return {target, out};
}

long HeckeOperator::summand_of(long k, long cusp) const {
  for (std::size_t i = 0; i < units.size(); ++i)
    if (units[i] == k) return static_cast<long>(i) * cusp_count + cusp;
  throw std::invalid_argument("summand_of: k is not a unit mod n");
}

HeckeOperator hecke_operator(ModelPtr model, HeckeKind kind, long p,
                             const std::vector<GL2Matrix>* base_twists) {
  HeckeContext ctx(model, kind, p);
  const long n = ctx.level();
  const GroupPresentation& pres = *model->presentation;
  std::vector<GL2Matrix> reps = coset_reps(n, ctx.g, pres);
  const std::size_t expected = kind == HeckeKind::Tp ? std::size_t(p + 1) : 1;
  if (reps.size() != expected)
    throw std::logic_error("hecke_operator: unexpected coset count");

  HeckeOperator h;
  h.level = n;
  h.truncation = model->truncation;
  h.kind = kind;
  h.p = p;
  h.det = ctx.det;
  h.model = model;
  h.cusp_count = pres.cusp_count;
  for (long k = 1; k < n; ++k)
    if (gcd_long(k, n) == 1) h.units.push_back(k);

  const long dim = model->dim();
  for (long cusp = 0; cusp < h.cusp_count; ++cusp) {
    CuspPoint a0 = pres.cusps[cusp].representative;
    if (base_twists) a0 = act((*base_twists)[cusp], a0);
    for (const auto& gj : reps) {
      const CuspPoint a_j = act(gj, a0);
      LocalHom lh = hecke_local_hom(ctx, a_j, cusp);
      for (long k : h.units) {
        const long k2 = ((ctx.det % n) * k) % n;
        const auto key = std::pair{h.summand_of(k, cusp),
                                   h.summand_of(k2, lh.target_cusp)};
        auto it = h.blocks.find(key);
        if (it == h.blocks.end())
          it = h.blocks.emplace(key, QMatrix(dim, dim)).first;
        it->second = it->second + lh.matrix;
      }
    }
  }
  return h;
}

QMatrix assemble(const HeckeOperator& h) {
  const long dim = h.summand_dim();
  QMatrix out(h.total_dim(), h.total_dim());
  for (const auto& [key, block] : h.blocks) {
    const long roff = key.second * dim, coff = key.first * dim;
    for (long i = 0; i < dim; ++i)
      for (long j = 0; j < dim; ++j)
        if (block.at(i, j) != 0) out.at(roff + i, coff + j) = block.at(i, j);
  }
  return out;
}

namespace {

// Coordinates (summand, basis index) with degree >= min_grade (or == grade).
std::vector<std::pair<long, long>> selected_coords(const HeckeOperator& h,
                                                   int min_grade, int max_grade) {
  std::vector<std::pair<long, long>> coords;
  const auto& degs = h.model->basis_degree;
  for (long s = 0; s < h.summand_count(); ++s)
    for (long j = 0; j < h.summand_dim(); ++j)
      if (degs[j] >= min_grade && degs[j] <= max_grade) coords.push_back({s, j});
  return coords;
}

QMatrix coord_matrix(const HeckeOperator& h,
                     const std::vector<std::pair<long, long>>& coords) {
  std::map<std::pair<long, long>, long> pos;
  for (std::size_t i = 0; i < coords.size(); ++i) pos[coords[i]] = long(i);
  QMatrix out(coords.size(), coords.size());
  for (const auto& [key, block] : h.blocks) {
    for (std::size_t col = 0; col < coords.size(); ++col) {
      if (coords[col].first != key.first) continue;
      const long j = coords[col].second;
      for (long i = 0; i < h.summand_dim(); ++i) {
        if (block.at(i, j) == 0) continue;
        auto it = pos.find({key.second, i});
        if (it == pos.end()) continue;
        out.at(it->second, col) += block.at(i, j);
      }
    }
  }
  return out;
}

} // namespace

QMatrix part_matrix(const HeckeOperator& h, int min_grade) {
  return coord_matrix(h, selected_coords(h, min_grade, h.truncation));
}

QMatrix grade_matrix(const HeckeOperator& h, int grade) {
  return coord_matrix(h, selected_coords(h, grade, grade));
}

bool preserves_filtration(const HeckeOperator& h) {
  const auto& degs = h.model->basis_degree;
  for (const auto& [key, block] : h.blocks)
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        if (block.at(i, j) != 0 && degs[i] < degs[j]) return false;
  return true;
}

bool augmentation_mass_ok(const HeckeOperator& h) {
  const Rational mass(h.kind == HeckeKind::Tp ? h.p + 1 : 1);
  for (long src = 0; src < h.summand_count(); ++src)
    for (long j = 0; j < h.summand_dim(); ++j) {
      Rational acc(0);
      for (const auto& [key, block] : h.blocks)
        if (key.first == src) acc += block.at(0, j);
      if (acc != (j == 0 ? mass : Rational(0))) return false;
    }
  return true;
}

std::string hecke_to_json(const HeckeOperator& h) {
  nlohmann::json j;
  j["schema"] = 1;
  j["level"] = h.level;
  j["truncation"] = h.truncation;
  j["kind"] = kind_name(h.kind);
  j["p"] = h.p;
  j["det"] = h.det;
  j["presentation_hash"] = presentation_hash(*h.model->presentation);
  j["units"] = h.units;
  j["cusp_count"] = h.cusp_count;
  j["summand_dim"] = h.summand_dim();
  nlohmann::json summands = nlohmann::json::array();
  for (long ki = 0; ki < long(h.units.size()); ++ki)
    for (long cusp = 0; cusp < h.cusp_count; ++cusp)
      summands.push_back({{"k", h.units[ki]}, {"cusp", cusp}});
  j["summands"] = summands;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& [key, block] : h.blocks) {
    nlohmann::json b;
    b["source"] = key.first;
    b["target"] = key.second;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < block.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t jj = 0; jj < block.cols(); ++jj)
        row.push_back(rational_to_string(block.at(i, jj)));
      rows.push_back(row);
    }
    b["matrix"] = rows;
    blocks.push_back(b);
  }
  j["blocks"] = blocks;
  return j.dump();
}

// --- components --------------------------------------------------------------

ComponentReport hecke_components(ModelPtr model, const std::vector<long>& primes) {
  const long n = model->presentation->level;
  if (primes.empty())
    throw std::invalid_argument("hecke_components: empty prime list");
  for (long p : primes)
    if (gcd_long(p, n) != 1)
      throw std::invalid_argument("hecke_components: prime divides the level");

  ComponentReport report;
  report.level = n;
  report.truncation = model->truncation;
  report.primes = primes;

  // Genus 0 has a trivial augmentation-ideal part; the decomposition then
  // runs on all of V, where the summands themselves are one-dimensional.
  const int min_grade = model->presentation->genus == 0 ? 0 : 1;
  std::vector<QMatrix> family;
  for (long p : primes) {
    for (HeckeKind kind : {HeckeKind::Tp, HeckeKind::Tpp}) {
      HeckeOperator h = hecke_operator(model, kind, p);
      family.push_back(part_matrix(h, min_grade));
      report.op_names.push_back(
          kind == HeckeKind::Tp ? "T(" + std::to_string(p) + ")"
                                : "T(" + std::to_string(p) + "," + std::to_string(p) + ")");
    }
  }
  report.ambient_dim = static_cast<long>(family[0].rows());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!(family[i] * family[j] == family[j] * family[i]))
        throw std::invalid_argument("hecke operators " + report.op_names[i] +
                                    " and " + report.op_names[j] +
                                    " do not commute");

  std::vector<PrimaryComponent> comps = primary_decomposition(family);

  // Grade of each coordinate of the analyzed space.
  std::vector<int> coord_grade;
  {
    const auto& degs = model->basis_degree;
    long summands = 0;
    for (long k = 1; k < n; ++k)
      if (gcd_long(k, n) == 1) ++summands;
    summands *= model->presentation->cusp_count;
    for (long s = 0; s < summands; ++s)
      for (std::size_t j = 0; j < degs.size(); ++j)
        if (degs[j] >= min_grade) coord_grade.push_back(degs[j]);
  }

  const int N = model->truncation;
  for (const auto& pc : comps) {
    HeckeComponent hc;
    hc.basis = pc.basis;
    for (const auto& op : family) {
      FactorAction fa = factor_action_on(op, pc.basis);
      hc.op_factors.push_back(fa.factor);
      hc.op_nilpotency.push_back(fa.nilpotency);
    }
    for (int grade = 1; grade <= N; ++grade) {
      bool met = false;
      for (std::size_t r = 0; r < pc.basis.rows() && !met; ++r) {
        if (coord_grade[r] != grade) continue;
        for (std::size_t ccol = 0; ccol < pc.basis.cols(); ++ccol)
          if (pc.basis.at(r, ccol) != 0) {
            met = true;
            break;
          }
      }
      if (met) hc.grades_met.push_back(grade);
    }
    for (int m = 2; m <= N; ++m) {
      const long inter = filtration_intersection_dim(pc.basis, coord_grade, m);
      hc.filtration_dims.push_back({m, inter});
      if (inter != 0 && inter != static_cast<long>(pc.basis.cols()))
        hc.dichotomy_ok = false;
    }
    report.components.push_back(std::move(hc));
  }

  for (std::size_t i = 0; i < report.components.size(); ++i)
    for (std::size_t j = i + 1; j < report.components.size(); ++j)
      if (report.components[i].op_factors == report.components[j].op_factors)
        report.coarse_warning = true;
  for (const auto& hc : report.components)
    if (!hc.dichotomy_ok) report.dichotomy_pass = false;
  return report;
}

long filtration_intersection_dim(const QMatrix& basis,
                                 const std::vector<int>& coord_grades, int m) {
  // rows of grade < m cut out the intersection with the grade >= m span
  std::vector<std::size_t> low_rows;
  for (std::size_t r = 0; r < basis.rows(); ++r)
    if (coord_grades[r] < m) low_rows.push_back(r);
  QMatrix lowpart(low_rows.size(), basis.cols());
  for (std::size_t i = 0; i < low_rows.size(); ++i)
    for (std::size_t c = 0; c < basis.cols(); ++c)
      lowpart.at(i, c) = basis.at(low_rows[i], c);
  return static_cast<long>(kernel_basis(lowpart).cols());
}

DichotomyReport verify_dichotomy(ModelPtr model, const std::vector<long>& primes) {
  DichotomyReport out;
  out.detail = hecke_components(model, primes);
  out.pass = out.detail.dichotomy_pass;
  out.coarse_warning = out.detail.coarse_warning;
  return out;
}

GradeSpectrum grade_spectrum(ModelPtr model, HeckeKind kind, long p, int grade) {
  if (grade < 0 || grade > model->truncation)
    throw std::invalid_argument("grade_spectrum: grade out of range");
  HeckeOperator h = hecke_operator(model, kind, p);
  if (!preserves_filtration(h))
    throw std::logic_error("grade_spectrum: operator does not preserve the filtration");
  GradeSpectrum out;
  out.charpoly = charpoly(grade_matrix(h, grade));
  out.moduli = root_moduli(out.charpoly);
  return out;
}

std::string component_report_to_json(const ComponentReport& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["level"] = r.level;
  j["truncation"] = r.truncation;
  j["primes"] = r.primes;
  j["operators"] = r.op_names;
  j["ambient_dim"] = r.ambient_dim;
  j["coarse_warning"] = r.coarse_warning;
  if (r.coarse_warning)
    j["suggestion"] =
        "two components share every computed factor; enlarge the prime set";
  j["dichotomy_pass"] = r.dichotomy_pass;
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : r.components) {
    nlohmann::json cj;
    cj["dim"] = c.basis.cols();
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : c.op_factors) factors.push_back(f.to_string());
    cj["factors"] = factors;
    cj["nilpotency"] = c.op_nilpotency;
    cj["grades"] = c.grades_met;
    nlohmann::json fd = nlohmann::json::array();
    for (auto [m, d] : c.filtration_dims) fd.push_back({m, d});
    cj["filtration_dims"] = fd;
    cj["dichotomy_ok"] = c.dichotomy_ok;
    comps.push_back(cj);
  }
  j["components"] = comps;
  return j.dump();
}

} // namespace emsym
