// Command-line front end over the emsym C API.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "emsym.h"
#include "cache_util.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
  std::string cache_dir;
  bool no_timestamp = false;
  long precision = 128;
};

int status_to_exit(emsym_status s) {
  switch (s) {
    case EMSYM_OK: return 0;
    case EMSYM_ERR_VERIFY: return 1;
    case EMSYM_ERR_USAGE: return 2;
    case EMSYM_ERR_RESOURCE: return 3;
    default: return 4;
  }
}

int fail(emsym_status s) {
  std::cerr << "error: " << emsym_last_error() << "\n";
  return status_to_exit(s);
}

void print_report(const std::string& payload, const GlobalOpts& g) {
  if (g.no_timestamp) {
    std::cout << payload << "\n";
    return;
  }
  json j = json::parse(payload);
  const auto now = std::chrono::system_clock::now();
  j["generated_at"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
          .count();
  std::cout << j.dump() << "\n";
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  emsym_string_free(s);
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Hecke operators on truncated algebras of modular groups"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--cache-dir", g.cache_dir, "cache directory (or EMSYM_CACHE_DIR)");
  app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp field");
  app.add_option("--precision", g.precision, "floating precision in bits")
      ->default_val(128);

  // group
  long level = 6;
  auto* cmd_group = app.add_subcommand("group", "presentation invariants of the level");
  cmd_group->add_option("--level", level, "level n >= 3")->required();

  // algebra
  int trunc = 1;
  auto* cmd_algebra = app.add_subcommand("algebra", "truncated algebra dimensions");
  cmd_algebra->add_option("--level", level)->required();
  cmd_algebra->add_option("-N,--truncation", trunc)->required();

  // hecke
  long prime = 5;
  std::string kind = "Tp";
  std::string out_path;
  bool no_cache = false;
  auto* cmd_hecke = app.add_subcommand("hecke", "compute a Hecke operator matrix");
  cmd_hecke->add_option("--level", level)->required();
  cmd_hecke->add_option("-N,--truncation", trunc)->required();
  cmd_hecke->add_option("-p,--prime", prime)->required();
  cmd_hecke->add_option("--kind", kind)->check(CLI::IsMember({"Tp", "Tpp"}));
  cmd_hecke->add_option("--out", out_path, "write the matrix JSON to a file");
  cmd_hecke->add_flag("--no-cache", no_cache);

  // verify
  std::string suite;
  std::vector<long> primes = {5, 7};
  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  cmd_verify->add_option("suite", suite,
                         "commutativity | filtration | dichotomy | roots | symbols")
      ->required();
  cmd_verify->add_option("--level", level)->required();
  cmd_verify->add_option("-N,--truncation", trunc)->required();
  cmd_verify->add_option("--primes", primes, "Hecke primes")->delimiter(',');

  // periods
  auto* cmd_periods = app.add_subcommand("periods", "numerical period computations");
  cmd_periods->require_subcommand(1);
  std::vector<std::string> form_paths;
  double tau_re = 0.0, tau_im = 1.0;
  auto* cmd_shuffle = cmd_periods->add_subcommand("shuffle", "shuffle identity residual");
  cmd_shuffle->add_option("--level", level)->required();
  cmd_shuffle->add_option("--forms", form_paths, "two q-expansion files")
      ->expected(2)
      ->required();
  cmd_shuffle->add_option("--tau-re", tau_re);
  cmd_shuffle->add_option("--tau-im", tau_im);

  std::string form_path, cusp = "0";
  int depth = 1;
  auto* cmd_mlv = cmd_periods->add_subcommand("mlv", "nested L-value at a cusp");
  cmd_mlv->add_option("--level", level)->required();
  cmd_mlv->add_option("--form", form_path)->required();
  cmd_mlv->add_option("--m,--depth", depth)->default_val(1);
  cmd_mlv->add_option("--cusp", cusp, "rational cusp value a (series at a + iy)");

  std::string values_path;
  long bound = 100;
  auto* cmd_relate = cmd_periods->add_subcommand(
      "relate", "integer-relation search over numeric values");
  cmd_relate->add_option("--values", values_path, "file of 're im err' lines")
      ->required();
  cmd_relate->add_option("--bound", bound);

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  if (emsym_status s = emsym_set_precision_bits(g.precision); s != EMSYM_OK)
    return fail(s);

  if (*cmd_group) {
    // presentation construction is deterministic per level, so the report
    // cache is keyed by the level alone
    const std::string dir = emsym_cli::resolve_cache_dir(g.cache_dir);
    const std::string key = "group_n" + std::to_string(level) + ".json";
    if (auto cached = emsym_cli::cache_read(dir, key)) {
      json j = json::parse(*cached, nullptr, false);
      if (!j.is_discarded() && j.value("schema", 0) == 1) {
        print_report(*cached, g);
        return 0;
      }
    }
    char* rep = nullptr;
    if (emsym_status s = emsym_group_report(level, &rep); s != EMSYM_OK)
      return fail(s);
    const std::string payload = take_string(rep);
    emsym_cli::cache_write(dir, key, payload);
    print_report(payload, g);
    return 0;
  }

  if (*cmd_algebra) {
    char* rep = nullptr;
    if (emsym_status s = emsym_algebra_report(level, trunc, &rep); s != EMSYM_OK)
      return fail(s);
    print_report(take_string(rep), g);
    return 0;
  }

  if (*cmd_hecke) {
    emsym_presentation* pres = nullptr;
    if (emsym_status s = emsym_presentation_create(level, &pres); s != EMSYM_OK)
      return fail(s);
    char* hash_c = nullptr;
    emsym_presentation_hash(pres, &hash_c);
    const std::string hash = take_string(hash_c);
    const std::string dir = emsym_cli::resolve_cache_dir(g.cache_dir);
    const std::string key = "hecke_n" + std::to_string(level) + "_N" +
                            std::to_string(trunc) + "_" + kind +
                            std::to_string(prime) + "_" + hash + ".json";
    std::string payload;
    if (!no_cache) {
      if (auto cached = emsym_cli::cache_read(dir, key)) {
        json j = json::parse(*cached, nullptr, false);
        if (!j.is_discarded() && j.value("presentation_hash", "") == hash)
          payload = *cached;
      }
    }
    if (payload.empty()) {
      emsym_model* model = nullptr;
      if (emsym_status s = emsym_model_create(pres, trunc, &model); s != EMSYM_OK) {
        emsym_presentation_free(pres);
        return fail(s);
      }
      emsym_hecke* h = nullptr;
      if (emsym_status s = emsym_hecke_create(model, kind.c_str(), prime, &h);
          s != EMSYM_OK) {
        emsym_model_free(model);
        emsym_presentation_free(pres);
        return fail(s);
      }
      char* matrix_c = nullptr;
      char* summary_c = nullptr;
      emsym_hecke_to_json(h, &matrix_c);
      emsym_hecke_summary(h, &summary_c);
      json j;
      j["schema"] = 1;
      j["presentation_hash"] = hash;
      j["summary"] = json::parse(take_string(summary_c));
      j["matrix"] = json::parse(take_string(matrix_c));
      payload = j.dump();
      emsym_hecke_free(h);
      emsym_model_free(model);
      if (!no_cache) emsym_cli::cache_write(dir, key, payload);
    }
    emsym_presentation_free(pres);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << payload;
    }
    print_report(payload, g);
    return 0;
  }

  if (*cmd_verify) {
    int pass = 0;
    char* rep = nullptr;
    if (emsym_status s = emsym_verify(suite.c_str(), level, trunc, primes.data(),
                                      primes.size(), &pass, &rep);
        s != EMSYM_OK)
      return fail(s);
    print_report(take_string(rep), g);
    return pass ? 0 : 1;
  }

  if (*cmd_shuffle) {
    char* rep = nullptr;
    if (emsym_status s =
            emsym_periods_shuffle(form_paths[0].c_str(), form_paths[1].c_str(),
                                  level, tau_re, tau_im, &rep);
        s != EMSYM_OK)
      return fail(s);
    print_report(take_string(rep), g);
    return 0;
  }

  if (*cmd_mlv) {
    char* rep = nullptr;
    if (emsym_status s = emsym_periods_mlv(form_path.c_str(), level, depth,
                                           cusp.c_str(), &rep);
        s != EMSYM_OK)
      return fail(s);
    print_report(take_string(rep), g);
    return 0;
  }

  if (*cmd_relate) {
    char* rep = nullptr;
    if (emsym_status s = emsym_periods_relate(values_path.c_str(), bound, &rep);
        s != EMSYM_OK)
      return fail(s);
    print_report(take_string(rep), g);
    return 0;
  }

  return 2;
}
