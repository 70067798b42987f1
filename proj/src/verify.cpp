#include "emsym/verify.hpp"

#include <random>

#include <json.hpp>

#include "emsym/hecke.hpp"

namespace emsym {

namespace {

using nlohmann::json;

GroupWord random_word(std::mt19937& rng, const GroupPresentation& p, int len) {
  std::uniform_int_distribution<int> pick(0, int(p.generators.size()) - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  GroupWord w;
  for (int i = 0; i < len; ++i) push_reduced(w, pick(rng), sgn(rng) ? 1 : -1);
  return w;
}

json matrix_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(rational_to_string(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

VerifyResult verify_commutativity(ModelPtr model, const std::vector<long>& primes) {
  json rep;
  rep["suite"] = "commutativity";
  std::vector<QMatrix> ops;
  std::vector<std::string> names;
  for (long p : primes)
    for (HeckeKind kind : {HeckeKind::Tp, HeckeKind::Tpp}) {
      ops.push_back(assemble(hecke_operator(model, kind, p)));
      names.push_back(kind == HeckeKind::Tp
                          ? "T(" + std::to_string(p) + ")"
                          : "T(" + std::to_string(p) + "," + std::to_string(p) + ")");
    }
  rep["operators"] = names;
  rep["dim"] = ops.empty() ? 0 : ops[0].rows();
  json failures = json::array();
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (!(ops[i] * ops[j] == ops[j] * ops[i]))
        failures.push_back({names[i], names[j]});
  rep["failures"] = failures;
  const bool pass = failures.empty();
  rep["pass"] = pass;
  return {pass, rep.dump()};
}

VerifyResult verify_filtration(ModelPtr model, const std::vector<long>& primes) {
  json rep;
  rep["suite"] = "filtration";
  json checks = json::array();
  bool pass = true;
  for (long p : primes)
    for (HeckeKind kind : {HeckeKind::Tp, HeckeKind::Tpp}) {
      HeckeOperator h = hecke_operator(model, kind, p);
      const bool filt = preserves_filtration(h);
      const bool mass = augmentation_mass_ok(h);
      checks.push_back({{"operator", kind_name(kind)},
                        {"p", p},
                        {"preserves_filtration", filt},
                        {"augmentation_mass", mass}});
      pass = pass && filt && mass;
    }
  rep["checks"] = checks;
  rep["pass"] = pass;
  return {pass, rep.dump()};
}

VerifyResult verify_dichotomy_suite(ModelPtr model, const std::vector<long>& primes) {
  json rep;
  rep["suite"] = "dichotomy";
  DichotomyReport d = verify_dichotomy(model, primes);
  rep["detail"] = json::parse(component_report_to_json(d.detail));
  rep["coarse_warning"] = d.coarse_warning;
  json dumps = json::array();
  for (const auto& c : d.detail.components)
    if (!c.dichotomy_ok) dumps.push_back(matrix_json(c.basis));
  rep["offending_component_bases"] = dumps;
  rep["pass"] = d.pass;
  return {d.pass, rep.dump()};
}

VerifyResult verify_roots(ModelPtr model) {
  json rep;
  rep["suite"] = "roots";
  std::mt19937 rng(2026);
  const GroupPresentation& pres = *model->presentation;
  long failures = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    AlgebraElement g = phi(random_word(rng, pres, 6), model);
    if (!(exp_element(log_element(g)) == g)) ++failures;
    if (!is_primitive(log_element(g))) ++failures;
    if (!is_grouplike(g)) ++failures;
    for (long t : {2L, 3L, 5L}) {
      AlgebraElement gt = one_element(model);
      for (long i = 0; i < t; ++i) gt = mul(gt, g);
      if (!(t_th_root(gt, t) == g)) ++failures;
    }
  }
  rep["trials"] = trials;
  rep["failures"] = failures;
  rep["pass"] = failures == 0;
  return {failures == 0, rep.dump()};
}

VerifyResult verify_symbols(ModelPtr model) {
  json rep;
  rep["suite"] = "symbols";
  std::mt19937 rng(7070);
  const GroupPresentation& pres = *model->presentation;
  long failures = 0;
  int trials = 0;
  for (const auto& cls : pres.cusps) {
    ++trials;
    const CuspPoint base = cls.representative;
    if (!(symbol_to_element(base, base, cls, model) == one_element(model)))
      ++failures;
    GL2Matrix g1 = evaluate_word(random_word(rng, pres, 5), pres.generators);
    GL2Matrix g2 = evaluate_word(random_word(rng, pres, 5), pres.generators);
    CuspPoint a = act(g1, base), b = act(g2, base), c = act(g1 * g2, base);
    if (!(mul(symbol_to_element(a, b, cls, model),
              symbol_to_element(b, c, cls, model)) ==
          symbol_to_element(a, c, cls, model)))
      ++failures;
    GL2Matrix g = evaluate_word(random_word(rng, pres, 5), pres.generators);
    if (!(symbol_to_element(act(g, a), act(g, b), cls, model) ==
          symbol_to_element(a, b, cls, model)))
      ++failures;
    GL2Matrix w = cusp_reduce(a, pres.level, pres.cusps).second;
    GL2Matrix pia =
        w * evaluate_word(pres.parabolic_words[cls.id], pres.generators) *
        w.inv_sl2();
    if (!(symbol_to_element(a, act(pia, a), cls, model) == one_element(model)))
      ++failures;
    // depth-(N+1) truncation
    AlgebraElement acc = one_element(model);
    for (int k = 0; k <= model->truncation; ++k) {
      GL2Matrix h = evaluate_word(random_word(rng, pres, 4), pres.generators);
      acc = mul(acc, symbol_to_element(base, act(h, base), cls, model) -
                         one_element(model));
    }
    if (!acc.is_zero()) ++failures;
  }
  rep["classes"] = trials;
  rep["failures"] = failures;
  rep["pass"] = failures == 0;
  return {failures == 0, rep.dump()};
}

} // namespace

VerifyResult run_verify_suite(const std::string& suite, long level,
                              int truncation, const std::vector<long>& primes) {
  auto pres = std::make_shared<GroupPresentation>(presentation(level));
  ModelPtr model = build_model(pres, truncation);
  if (suite == "commutativity") return verify_commutativity(model, primes);
  if (suite == "filtration") return verify_filtration(model, primes);
  if (suite == "dichotomy") return verify_dichotomy_suite(model, primes);
  if (suite == "roots") return verify_roots(model);
  if (suite == "symbols") return verify_symbols(model);
  throw std::invalid_argument("unknown verify suite: " + suite);
}

std::string group_report_json(long level) {
  GroupPresentation p = presentation(level);
  json rep;
  rep["schema"] = 1;
  rep["level"] = p.level;
  rep["genus"] = p.genus;
  rep["cusp_count"] = p.cusp_count;
  rep["free_rank"] = p.free_rank;
  rep["psl_index"] = p.psl_index;
  json gens = json::array();
  for (const auto& g : p.generators)
    gens.push_back({g.a.get_si(), g.b.get_si(), g.c.get_si(), g.d.get_si()});
  rep["generators"] = gens;
  json cusps = json::array();
  for (const auto& c : p.cusps)
    cusps.push_back({{"id", c.id}, {"representative", c.representative.to_string()}});
  rep["cusps"] = cusps;
  rep["presentation_hash"] = presentation_hash(p);
  return rep.dump();
}

std::string algebra_report_json(long level, int truncation) {
  auto pres = std::make_shared<GroupPresentation>(presentation(level));
  ModelPtr model = build_model(pres, truncation);
  json rep;
  rep["schema"] = 1;
  rep["level"] = level;
  rep["truncation"] = truncation;
  rep["graded_dims"] = model->graded_dims;
  rep["summand_dim"] = model->dim();
  long units = 0;
  for (long k = 1; k < level; ++k) {
    long a = k, b = level;
    while (b) {
      long t = a % b;
      a = b;
      b = t;
    }
    if (a == 1) ++units;
  }
  rep["units"] = units;
  rep["total_dim"] = units * pres->cusp_count * model->dim();
  rep["ideal_dim"] = units * pres->cusp_count * (model->dim() - 1);
  rep["presentation_hash"] = presentation_hash(*pres);
  return rep.dump();
}

} // namespace emsym
