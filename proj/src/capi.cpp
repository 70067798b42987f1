#include "emsym.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "emsym/hecke.hpp"
#include "emsym/periods.hpp"
#include "emsym/verify.hpp"

using namespace emsym;

struct emsym_presentation {
  std::shared_ptr<const GroupPresentation> p;
};
struct emsym_model {
  ModelPtr m;
};
struct emsym_hecke {
  HeckeOperator h;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
emsym_status guarded(F&& fn) {
  try {
    return fn();
  } catch (const ResourceCapError& e) {
    g_last_error = e.what();
    return EMSYM_ERR_RESOURCE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return EMSYM_ERR_USAGE;
  } catch (const std::length_error& e) {
    g_last_error = e.what();
    return EMSYM_ERR_RESOURCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EMSYM_ERR_INTERNAL;
  }
}

nlohmann::json numeric_json(const NumericValue& v) {
  return {{"re", v.re.to_string(32)},
          {"im", v.im.to_string(32)},
          {"error", v.error}};
}

} // namespace

extern "C" {

const char* emsym_version(void) { return "0.1.0"; }

const char* emsym_last_error(void) { return g_last_error.c_str(); }

void emsym_string_free(char* s) { std::free(s); }

emsym_status emsym_set_precision_bits(long bits) {
  return guarded([&]() {
    Real::set_default_bits(bits);
    return EMSYM_OK;
  });
}

emsym_status emsym_presentation_create(long level, emsym_presentation** out) {
  return guarded([&]() {
    auto p = std::make_shared<GroupPresentation>(presentation(level));
    *out = new emsym_presentation{std::move(p)};
    return EMSYM_OK;
  });
}

void emsym_presentation_free(emsym_presentation* p) { delete p; }

long emsym_presentation_genus(const emsym_presentation* p) { return p->p->genus; }
long emsym_presentation_cusp_count(const emsym_presentation* p) {
  return p->p->cusp_count;
}
long emsym_presentation_free_rank(const emsym_presentation* p) {
  return p->p->free_rank;
}
long emsym_presentation_psl_index(const emsym_presentation* p) {
  return p->p->psl_index;
}

emsym_status emsym_presentation_to_json(const emsym_presentation* p, char** out) {
  return guarded([&]() {
    *out = dup_string(presentation_to_json(*p->p));
    return EMSYM_OK;
  });
}

emsym_status emsym_presentation_from_json(const char* text,
                                          emsym_presentation** out) {
  return guarded([&]() {
    auto p = std::make_shared<GroupPresentation>(presentation_from_json(text));
    *out = new emsym_presentation{std::move(p)};
    return EMSYM_OK;
  });
}

emsym_status emsym_presentation_hash(const emsym_presentation* p, char** out) {
  return guarded([&]() {
    *out = dup_string(presentation_hash(*p->p));
    return EMSYM_OK;
  });
}

emsym_status emsym_group_report(long level, char** json_out) {
  return guarded([&]() {
    *json_out = dup_string(group_report_json(level));
    return EMSYM_OK;
  });
}

emsym_status emsym_model_create(const emsym_presentation* p, int truncation,
                                emsym_model** out) {
  return guarded([&]() {
    *out = new emsym_model{build_model(p->p, truncation)};
    return EMSYM_OK;
  });
}

void emsym_model_free(emsym_model* m) { delete m; }

long emsym_model_dim(const emsym_model* m) { return m->m->dim(); }

emsym_status emsym_model_graded_dims(const emsym_model* m, long* buf,
                                     size_t buflen, size_t* written) {
  return guarded([&]() {
    const auto& dims = m->m->graded_dims;
    if (buflen < dims.size()) {
      g_last_error = "buffer too small";
      return EMSYM_ERR_USAGE;
    }
    for (std::size_t i = 0; i < dims.size(); ++i) buf[i] = dims[i];
    if (written) *written = dims.size();
    return EMSYM_OK;
  });
}

emsym_status emsym_model_to_json(const emsym_model* m, char** out) {
  return guarded([&]() {
    *out = dup_string(model_to_json(*m->m));
    return EMSYM_OK;
  });
}

emsym_status emsym_algebra_report(long level, int truncation, char** json_out) {
  return guarded([&]() {
    *json_out = dup_string(algebra_report_json(level, truncation));
    return EMSYM_OK;
  });
}

emsym_status emsym_hecke_create(const emsym_model* m, const char* kind, long p,
                                emsym_hecke** out) {
  return guarded([&]() {
    HeckeKind k;
    if (std::strcmp(kind, "Tp") == 0)
      k = HeckeKind::Tp;
    else if (std::strcmp(kind, "Tpp") == 0)
      k = HeckeKind::Tpp;
    else {
      g_last_error = "kind must be Tp or Tpp";
      return EMSYM_ERR_USAGE;
    }
    *out = new emsym_hecke{hecke_operator(m->m, k, p)};
    return EMSYM_OK;
  });
}

void emsym_hecke_free(emsym_hecke* h) { delete h; }

emsym_status emsym_hecke_to_json(const emsym_hecke* h, char** out) {
  return guarded([&]() {
    *out = dup_string(hecke_to_json(h->h));
    return EMSYM_OK;
  });
}

emsym_status emsym_hecke_summary(const emsym_hecke* h, char** json_out) {
  return guarded([&]() {
    nlohmann::json j;
    j["schema"] = 1;
    j["level"] = h->h.level;
    j["truncation"] = h->h.truncation;
    j["kind"] = kind_name(h->h.kind);
    j["p"] = h->h.p;
    j["total_dim"] = h->h.total_dim();
    j["summand_dim"] = h->h.summand_dim();
    j["preserves_filtration"] = preserves_filtration(h->h);
    j["augmentation_mass_ok"] = augmentation_mass_ok(h->h);
    if (h->h.model->presentation->genus > 0) {
      QMatrix g1 = grade_matrix(h->h, 1);
      QPolynomial cp = charpoly(g1);
      bool nilpotent = true;
      for (std::size_t i = 0; i + 1 < cp.coeffs().size(); ++i)
        if (cp[i] != 0) nilpotent = false;
      j["grade1_nilpotent"] = nilpotent;
    }
    j["presentation_hash"] = presentation_hash(*h->h.model->presentation);
    *json_out = dup_string(j.dump());
    return EMSYM_OK;
  });
}

emsym_status emsym_grade_spectrum(const emsym_model* m, const char* kind,
                                  long p, int grade, char** json_out) {
  return guarded([&]() {
    HeckeKind k = std::strcmp(kind, "Tpp") == 0 ? HeckeKind::Tpp : HeckeKind::Tp;
    GradeSpectrum gs = grade_spectrum(m->m, k, p, grade);
    nlohmann::json j;
    j["schema"] = 1;
    j["charpoly"] = gs.charpoly.to_string();
    nlohmann::json mods = nlohmann::json::array();
    for (const auto& rm : gs.moduli)
      mods.push_back({{"modulus", rm.modulus},
                      {"error", rm.error},
                      {"multiplicity", rm.multiplicity}});
    j["root_moduli"] = mods;
    *json_out = dup_string(j.dump());
    return EMSYM_OK;
  });
}

emsym_status emsym_components_report(const emsym_model* m, const long* primes,
                                     size_t nprimes, char** json_out) {
  return guarded([&]() {
    std::vector<long> ps(primes, primes + nprimes);
    *json_out = dup_string(component_report_to_json(hecke_components(m->m, ps)));
    return EMSYM_OK;
  });
}

emsym_status emsym_verify(const char* suite, long level, int truncation,
                          const long* primes, size_t nprimes, int* pass,
                          char** json_out) {
  return guarded([&]() {
    std::vector<long> ps(primes, primes + nprimes);
    VerifyResult r = run_verify_suite(suite, level, truncation, ps);
    if (pass) *pass = r.pass ? 1 : 0;
    if (json_out) *json_out = dup_string(r.report_json);
    return EMSYM_OK;
  });
}

emsym_status emsym_periods_shuffle(const char* qexp_path1,
                                   const char* qexp_path2, long level,
                                   double tau_re, double tau_im,
                                   char** json_out) {
  return guarded([&]() {
    QExpansion f = load_qexpansion(qexp_path1, level);
    QExpansion g = load_qexpansion(qexp_path2, level);
    PathSpec path;
    path.start = Complex::of(tau_re, tau_im);
    NumericValue ab = iterated_integral({f, g}, path);
    NumericValue ba = iterated_integral({g, f}, path);
    NumericValue a = iterated_integral({f}, path);
    NumericValue b = iterated_integral({g}, path);
    Complex lhs{ab.re + ba.re, ab.im + ba.im};
    Complex rhs = Complex{a.re, a.im} * Complex{b.re, b.im};
    const double resid = std::hypot((lhs.re - rhs.re).to_double(),
                                    (lhs.im - rhs.im).to_double());
    const double combined = ab.error + ba.error + a.error * (1 + b.abs_d()) +
                            b.error * (1 + a.abs_d());
    nlohmann::json j;
    j["schema"] = 1;
    j["integral_fg"] = numeric_json(ab);
    j["integral_gf"] = numeric_json(ba);
    j["integral_f"] = numeric_json(a);
    j["integral_g"] = numeric_json(b);
    j["residual"] = resid;
    j["combined_error"] = combined;
    j["pass"] = resid <= combined;
    j["settings"] = {{"tau_re", tau_re},
                     {"tau_im", tau_im},
                     {"segments", path.segments},
                     {"gl_order", path.gl_order},
                     {"precision_bits", Real::default_bits()}};
    *json_out = dup_string(j.dump());
    return EMSYM_OK;
  });
}

emsym_status emsym_periods_mlv(const char* qexp_path, long level, int depth,
                               const char* cusp, char** json_out) {
  return guarded([&]() {
    if (depth < 1) {
      g_last_error = "depth must be >= 1";
      return EMSYM_ERR_USAGE;
    }
    auto a = rational_from_string(cusp);
    if (!a) {
      g_last_error = "cusp must be a rational number";
      return EMSYM_ERR_USAGE;
    }
    QExpansion f = load_qexpansion(qexp_path, level);
    std::vector<QExpansion> forms(depth, f);
    MlvParams params;
    NumericValue v = multiple_L(forms, *a, params);
    nlohmann::json j;
    j["schema"] = 1;
    j["depth"] = depth;
    j["cusp"] = rational_to_string(*a);
    j["value"] = numeric_json(v);
    j["settings"] = {{"lmax", f.lmax()},
                     {"y_exp_min", params.y_exp_min},
                     {"y_exp_max", params.y_exp_max},
                     {"precision_bits", Real::default_bits()}};
    *json_out = dup_string(j.dump());
    return EMSYM_OK;
  });
}

emsym_status emsym_periods_relate(const char* values_path, long bound,
                                  char** json_out) {
  return guarded([&]() {
    std::ifstream in(values_path);
    if (!in) {
      g_last_error = "cannot open values file";
      return EMSYM_ERR_USAGE;
    }
    std::vector<NumericValue> values;
    std::string line;
    while (std::getline(in, line)) {
      std::size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      std::istringstream ls(line);
      double re, im, err;
      if (!(ls >> re >> im >> err)) {
        g_last_error = "values file: expected 're im err' per line";
        return EMSYM_ERR_USAGE;
      }
      values.push_back({Real::of(re), Real::of(im), err});
    }
    if (values.size() < 2) {
      g_last_error = "values file needs a target and at least one candidate";
      return EMSYM_ERR_USAGE;
    }
    NumericValue target = values.front();
    values.erase(values.begin());
    auto rel = relation_detect(target, values, bound);
    nlohmann::json j;
    j["schema"] = 1;
    j["bound"] = bound;
    if (rel) {
      nlohmann::json coeffs = nlohmann::json::array();
      for (const auto& c : *rel) coeffs.push_back(c.get_str());
      j["relation"] = coeffs;
      j["found"] = true;
    } else {
      j["found"] = false;
    }
    *json_out = dup_string(j.dump());
    return EMSYM_OK;
  });
}

} // extern "C"
