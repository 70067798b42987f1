// Exercises the shared-library surface: opaque handles, status codes and
// JSON reports, exactly as an external binding would use them.
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "emsym.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  emsym_string_free(s);
  return out;
}

} // namespace

TEST_CASE("version and error strings exist") {
  CHECK(std::string(emsym_version()).size() > 0);
  CHECK(emsym_last_error() != nullptr);
}

TEST_CASE("presentation handles round-trip through JSON") {
  emsym_presentation* p = nullptr;
  REQUIRE(emsym_presentation_create(6, &p) == EMSYM_OK);
  CHECK(emsym_presentation_genus(p) == 1);
  CHECK(emsym_presentation_cusp_count(p) == 12);
  CHECK(emsym_presentation_free_rank(p) == 13);
  CHECK(emsym_presentation_psl_index(p) == 72);

  char* js = nullptr;
  REQUIRE(emsym_presentation_to_json(p, &js) == EMSYM_OK);
  std::string text = take(js);
  emsym_presentation* q = nullptr;
  REQUIRE(emsym_presentation_from_json(text.c_str(), &q) == EMSYM_OK);
  char* js2 = nullptr;
  REQUIRE(emsym_presentation_to_json(q, &js2) == EMSYM_OK);
  CHECK(take(js2) == text);
  emsym_presentation_free(q);
  emsym_presentation_free(p);
}

TEST_CASE("invalid level is a usage error with a message") {
  emsym_presentation* p = nullptr;
  CHECK(emsym_presentation_create(2, &p) == EMSYM_ERR_USAGE);
  CHECK(std::string(emsym_last_error()).find("level") != std::string::npos);
}

TEST_CASE("model handle exposes the graded dimensions") {
  emsym_presentation* p = nullptr;
  REQUIRE(emsym_presentation_create(6, &p) == EMSYM_OK);
  emsym_model* m = nullptr;
  REQUIRE(emsym_model_create(p, 2, &m) == EMSYM_OK);
  CHECK(emsym_model_dim(m) == 6);
  long dims[8];
  size_t written = 0;
  REQUIRE(emsym_model_graded_dims(m, dims, 8, &written) == EMSYM_OK);
  REQUIRE(written == 3);
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 2);
  CHECK(dims[2] == 3);
  emsym_model_free(m);
  emsym_presentation_free(p);
}

TEST_CASE("hecke handle produces summary and matrix JSON") {
  emsym_presentation* p = nullptr;
  REQUIRE(emsym_presentation_create(6, &p) == EMSYM_OK);
  emsym_model* m = nullptr;
  REQUIRE(emsym_model_create(p, 1, &m) == EMSYM_OK);
  emsym_hecke* h = nullptr;
  REQUIRE(emsym_hecke_create(m, "Tp", 5, &h) == EMSYM_OK);
  char* sum = nullptr;
  REQUIRE(emsym_hecke_summary(h, &sum) == EMSYM_OK);
  auto j = nlohmann::json::parse(take(sum));
  CHECK(j["preserves_filtration"] == true);
  CHECK(j["augmentation_mass_ok"] == true);
  CHECK(j["total_dim"] == 72);
  char* mat = nullptr;
  REQUIRE(emsym_hecke_to_json(h, &mat) == EMSYM_OK);
  CHECK(take(mat).find("\"blocks\"") != std::string::npos);
  emsym_hecke_free(h);

  CHECK(emsym_hecke_create(m, "Tx", 5, &h) == EMSYM_ERR_USAGE);
  CHECK(emsym_hecke_create(m, "Tp", 3, &h) == EMSYM_ERR_USAGE);
  emsym_model_free(m);
  emsym_presentation_free(p);
}

TEST_CASE("grade spectrum over the C surface") {
  emsym_presentation* p = nullptr;
  REQUIRE(emsym_presentation_create(6, &p) == EMSYM_OK);
  emsym_model* m = nullptr;
  REQUIRE(emsym_model_create(p, 1, &m) == EMSYM_OK);
  char* js = nullptr;
  REQUIRE(emsym_grade_spectrum(m, "Tp", 5, 1, &js) == EMSYM_OK);
  auto j = nlohmann::json::parse(take(js));
  for (const auto& rm : j["root_moduli"])
    CHECK(rm["modulus"].get<double>() == 0.0);
  emsym_model_free(m);
  emsym_presentation_free(p);
}

TEST_CASE("verify suites over the C surface") {
  int pass = -1;
  char* rep = nullptr;
  long primes[] = {5, 7};
  REQUIRE(emsym_verify("symbols", 6, 2, primes, 2, &pass, &rep) == EMSYM_OK);
  CHECK(pass == 1);
  CHECK(take(rep).find("\"pass\":true") != std::string::npos);
  CHECK(emsym_verify("nonsense", 6, 1, primes, 2, &pass, &rep) ==
        EMSYM_ERR_USAGE);
}

TEST_CASE("resource cap surfaces as EMSYM_ERR_RESOURCE") {
  emsym_presentation* p = nullptr;
  REQUIRE(emsym_presentation_create(7, &p) == EMSYM_OK);
  emsym_model* m = nullptr;
  CHECK(emsym_model_create(p, 12, &m) == EMSYM_ERR_RESOURCE);
  emsym_presentation_free(p);
}

TEST_CASE("periods over the C surface") {
  const std::string dir = TEST_DATA_DIR;
  const std::string eta = dir + "/eta4_level6.qexp";
  char* js = nullptr;
  REQUIRE(emsym_periods_shuffle(eta.c_str(), eta.c_str(), 6, 0.0, 1.0, &js) ==
          EMSYM_OK);
  auto j = nlohmann::json::parse(take(js));
  CHECK(j["pass"] == true);
  CHECK(j["residual"].get<double>() <= j["combined_error"].get<double>());
  CHECK(j["combined_error"].get<double>() <= 1e-6);

  REQUIRE(emsym_periods_mlv(eta.c_str(), 6, 2, "1", &js) == EMSYM_OK);
  auto jm = nlohmann::json::parse(take(js));
  CHECK(jm["depth"] == 2);

  // planted relation through the file interface
  const std::string vals = std::string("/tmp/emsym_capi_vals.txt");
  {
    std::ofstream out(vals);
    out << "2.6457513110645905905 0 1e-15\n"; // sqrt(7)
    out << "0.52915026221291811810 0 1e-15\n"; // sqrt(7)/5
  }
  REQUIRE(emsym_periods_relate(vals.c_str(), 10, &js) == EMSYM_OK);
  auto jr = nlohmann::json::parse(take(js));
  REQUIRE(jr["found"] == true);
  CHECK(jr["relation"][0] == "1");
  CHECK(jr["relation"][1] == "-5");
}
