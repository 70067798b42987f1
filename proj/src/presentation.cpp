#include "emsym/presentation.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>

#include <json.hpp>

namespace emsym {

namespace {

const GL2Matrix S_MAT = GL2Matrix::from_longs(0, -1, 1, 0);
// R = S T, order 3 in PSL2(Z).
const GL2Matrix R_MAT = GL2Matrix::from_longs(0, -1, 1, 1);
const GL2Matrix T_MAT = GL2Matrix::from_longs(1, 1, 0, 1);

long mod_pos_l(const Integer& z, long n) {
  Integer r = z % Integer(n);
  if (r < 0) r += n;
  return r.get_si();
}

// Canonical key of +-M mod n, entries packed 16 bits each.
std::uint64_t coset_key(const GL2Matrix& m, long n) {
  std::array<long, 4> e = {mod_pos_l(m.a, n), mod_pos_l(m.b, n),
                           mod_pos_l(m.c, n), mod_pos_l(m.d, n)};
  std::array<long, 4> f;
  for (int i = 0; i < 4; ++i) f[i] = (n - e[i]) % n;
  const auto& k = (f < e) ? f : e;
  return (std::uint64_t(k[0]) << 48) | (std::uint64_t(k[1]) << 32) |
         (std::uint64_t(k[2]) << 16) | std::uint64_t(k[3]);
}

} // namespace

struct SchreierData {
  long level = 0;
  long mu = 0;
  std::vector<long> step_s;     // right multiplication by S
  std::vector<long> step_r;     // right multiplication by R
  std::vector<long> step_r_inv;
  std::vector<GroupWord> slot_s; // expression appended when stepping c -> cS
  std::vector<GroupWord> slot_r; // expression appended when stepping c -> cR
};

namespace {

struct BfsResult {
  std::vector<GL2Matrix> rep;
  std::vector<long> step_s, step_r;
  std::vector<long> parent;     // BFS tree
  std::vector<int> parent_move; // 0 = S, 1 = R, 2 = R^{-1}
};

BfsResult enumerate_cosets(long n) {
  BfsResult out;
  std::map<std::uint64_t, long> index;
  const GL2Matrix moves[3] = {S_MAT, R_MAT, R_MAT.inv_sl2()};
  out.rep.push_back(GL2Matrix::identity());
  out.parent.push_back(-1);
  out.parent_move.push_back(-1);
  index[coset_key(out.rep[0], n)] = 0;
  std::queue<long> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    long c = bfs.front();
    bfs.pop();
    for (int mv = 0; mv < 3; ++mv) {
      GL2Matrix m = out.rep[c] * moves[mv];
      std::uint64_t key = coset_key(m, n);
      if (index.find(key) == index.end()) {
        long id = static_cast<long>(out.rep.size());
        index[key] = id;
        out.rep.push_back(m);
        out.parent.push_back(c);
        out.parent_move.push_back(mv);
        bfs.push(id);
      }
    }
  }
  const long mu = static_cast<long>(out.rep.size());
  out.step_s.assign(mu, -1);
  out.step_r.assign(mu, -1);
  for (long c = 0; c < mu; ++c) {
    out.step_s[c] = index.at(coset_key(out.rep[c] * S_MAT, n));
    out.step_r[c] = index.at(coset_key(out.rep[c] * R_MAT, n));
  }
  return out;
}

// Schreier element for the directed edge c --x--> c', sign-normalized into
// Gamma(n).
GL2Matrix schreier_matrix(const BfsResult& b, long c, const GL2Matrix& x,
                          long cx, long n) {
  GL2Matrix m = b.rep[c] * x * b.rep[cx].inv_sl2();
  if (!in_gamma_n(m, n)) m = -m;
  if (!in_gamma_n(m, n))
    throw std::logic_error("schreier element is not in Gamma(n)");
  return m;
}

struct RewriteState {
  const SchreierData& sd;
  GroupWord out;
  long coset = 0;

  void step_sigma() {
    append_reduced(out, sd.slot_s[coset]);
    coset = sd.step_s[coset];
  }
  void step_rho() {
    append_reduced(out, sd.slot_r[coset]);
    coset = sd.step_r[coset];
  }
  void step_rho_inv() {
    const long prev = sd.step_r_inv[coset];
    append_reduced(out, inverse_word(sd.slot_r[prev]));
    coset = prev;
  }
  // T = sigma rho in PSL2(Z); large powers walk the coset cycle once and
  // repeat the accumulated loop word.
  void step_t_power(long k) {
    if (k == 0) return;
    const bool fwd = k > 0;
    long remaining = fwd ? k : -k;
    const long start = coset;
    GroupWord cycle;
    long period = 0;
    {
      RewriteState scout{sd, {}, start};
      do {
        if (fwd) {
          scout.step_sigma();
          scout.step_rho();
        } else {
          scout.step_rho_inv();
          scout.step_sigma();
        }
        ++period;
      } while (scout.coset != start && period <= sd.mu + 1);
      if (scout.coset != start)
        throw std::logic_error("coset cycle detection failed");
      cycle = std::move(scout.out);
    }
    const long q = remaining / period, s = remaining % period;
    if (!cycle.empty()) {
      if (q > 0 && q * word_length(cycle) > 8'000'000)
        throw std::length_error("word_problem: rewriting exceeds size cap");
      for (long i = 0; i < q; ++i) append_reduced(out, cycle);
    }
    for (long i = 0; i < s; ++i) {
      if (fwd) {
        step_sigma();
        step_rho();
      } else {
        step_rho_inv();
        step_sigma();
      }
    }
  }
};

} // namespace

std::vector<std::pair<char, long>> st_decompose(const GL2Matrix& m) {
  if (m.det() != 1) throw std::invalid_argument("st_decompose: det != 1");
  std::vector<std::pair<char, long>> out;
  GL2Matrix cur = m;
  while (cur.c != 0) {
    // q = nearest integer to a/c so that |a - qc| <= |c|/2
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), cur.a.get_mpz_t(),
                cur.c.get_mpz_t());
    if (2 * r > abs(cur.c)) {
      q += 1;
      r -= abs(cur.c);
    }
    // cur = T^q S next  with  next = S^{-1} T^{-q} cur
    if (q != 0) out.push_back({'T', q.get_si()});
    out.push_back({'S', 1});
    GL2Matrix next(cur.c, cur.d, q * cur.c - cur.a, q * cur.d - cur.b);
    cur = next;
  }
  if (cur.a == 1) {
    if (cur.b != 0) out.push_back({'T', cur.b.get_si()});
  } else {
    // cur = -T^{-b}: emit S^2 T^{-b}
    out.push_back({'S', 2});
    if (cur.b != 0) out.push_back({'T', Integer(-cur.b).get_si()});
  }
  return out;
}

GroupPresentation presentation(long n) {
  if (n < 3)
    throw std::invalid_argument("presentation: level must be >= 3");
  GroupPresentation pres;
  pres.level = n;
  pres.cusps = cusp_classes(n);
  pres.cusp_count = static_cast<long>(pres.cusps.size());

  BfsResult b = enumerate_cosets(n);
  const long mu = static_cast<long>(b.rep.size());
  pres.psl_index = mu;
  if (mu % n != 0 || pres.cusp_count != mu / n)
    throw std::logic_error("presentation: cusp count does not match index");
  if ((12 + mu - 6 * pres.cusp_count) % 12 != 0)
    throw std::logic_error("presentation: genus formula not integral");
  pres.genus = (12 + mu - 6 * pres.cusp_count) / 12;

  auto sd = std::make_shared<SchreierData>();
  sd->level = n;
  sd->mu = mu;
  sd->step_s = b.step_s;
  sd->step_r = b.step_r;
  sd->step_r_inv.assign(mu, -1);
  for (long c = 0; c < mu; ++c) sd->step_r_inv[b.step_r[c]] = c;
  sd->slot_s.assign(mu, {});
  sd->slot_r.assign(mu, {});

  auto tree_edge = [&](long from, long to, int mv) {
    // directed tree edge from --mv--> to, or its reverse
    if (b.parent[to] == from && b.parent_move[to] == mv) return true;
    const int rev = (mv == 0) ? 0 : (mv == 1 ? 2 : 1);
    return b.parent[from] == to && b.parent_move[from] == rev;
  };

  // Free generators: one per non-tree edge of the quotient graph.
  for (long c = 0; c < mu; ++c) {
    const long cs = b.step_s[c];
    if (cs < c) continue; // handle each sigma-orbit once
    if (cs == c) throw std::logic_error("sigma fixes a coset: torsion");
    if (tree_edge(c, cs, 0)) continue;
    const int g = static_cast<int>(pres.generators.size());
    pres.generators.push_back(schreier_matrix(b, c, S_MAT, cs, n));
    sd->slot_s[c] = {{g, 1}};
    sd->slot_s[cs] = {{g, -1}};
  }
  std::vector<bool> seen(mu, false);
  for (long c0 = 0; c0 < mu; ++c0) {
    if (seen[c0]) continue;
    const long c1 = b.step_r[c0], c2 = b.step_r[c1];
    if (c1 == c0 || c2 == c0) throw std::logic_error("rho orbit too small: torsion");
    seen[c0] = seen[c1] = seen[c2] = true;
    const long cyc[3] = {c0, c1, c2};
    bool tr[3];
    int ntree = 0;
    for (int i = 0; i < 3; ++i) {
      tr[i] = tree_edge(cyc[i], cyc[(i + 1) % 3], 1);
      if (tr[i]) ++ntree;
    }
    if (ntree >= 2) continue; // slots all stay empty
    if (ntree == 1) {
      int i = 0;
      while (!tr[i]) ++i;
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      const int g = static_cast<int>(pres.generators.size());
      pres.generators.push_back(
          schreier_matrix(b, cyc[j], R_MAT, cyc[(j + 1) % 3], n));
      sd->slot_r[cyc[j]] = {{g, 1}};
      sd->slot_r[cyc[k]] = {{g, -1}};
    } else {
      const int g1 = static_cast<int>(pres.generators.size());
      pres.generators.push_back(schreier_matrix(b, c0, R_MAT, c1, n));
      const int g2 = static_cast<int>(pres.generators.size());
      pres.generators.push_back(schreier_matrix(b, c1, R_MAT, c2, n));
      sd->slot_r[c0] = {{g1, 1}};
      sd->slot_r[c1] = {{g2, 1}};
      sd->slot_r[c2] = {{g2, -1}, {g1, -1}};
    }
  }
  pres.free_rank = static_cast<long>(pres.generators.size());
  if (pres.free_rank != 2 * pres.genus + pres.cusp_count - 1)
    throw std::logic_error("presentation: rank does not match 2g + c - 1");
  pres.schreier = sd;

  // Parabolic word per cusp class: conjugate of T^n fixing the
  // representative, pushed through the word problem.
  pres.parabolic_words.reserve(pres.cusps.size());
  for (const auto& cl : pres.cusps) {
    const GL2Matrix bm = extend_to_sl2(cl.representative);
    const GL2Matrix tn(Integer(1), Integer(n), Integer(0), Integer(1));
    const GL2Matrix par = bm * tn * bm.inv_sl2();
    pres.parabolic_words.push_back(word_problem(par, pres));
  }
  return pres;
}

GroupWord word_problem(const GL2Matrix& gamma, const GroupPresentation& pres) {
  if (!in_gamma_n(gamma, pres.level))
    throw std::invalid_argument("word_problem: matrix is not in Gamma(n)");
  std::shared_ptr<const SchreierData> sd = pres.schreier;
  if (!sd) {
    GroupPresentation rebuilt = presentation(pres.level);
    if (!(rebuilt.generators == pres.generators))
      throw std::invalid_argument(
          "word_problem: presentation does not match the deterministic "
          "construction for its level");
    sd = rebuilt.schreier;
  }
  RewriteState st{*sd, {}, 0};
  for (const auto& [letter, exp] : st_decompose(gamma)) {
    if (letter == 'S') {
      for (long i = 0; i < exp; ++i) st.step_sigma();
    } else {
      st.step_t_power(exp);
    }
  }
  if (st.coset != 0)
    throw std::logic_error("word_problem: rewriting did not close up");
  GroupWord w = std::move(st.out);
  if (!(evaluate_word(w, pres.generators) == gamma))
    throw std::logic_error("word_problem: evaluation mismatch");
  return w;
}

// --- JSON ------------------------------------------------------------------

namespace {

nlohmann::json word_to_json(const GroupWord& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& l : w) arr.push_back({l.gen, l.exp});
  return arr;
}

GroupWord word_from_json(const nlohmann::json& arr) {
  GroupWord w;
  for (const auto& l : arr)
    w.push_back({l.at(0).get<int>(), l.at(1).get<long>()});
  return w;
}

long to_long_checked(const Integer& z) {
  if (!z.fits_slong_p())
    throw std::invalid_argument("entry exceeds the serializable range");
  return z.get_si();
}

} // namespace

std::string presentation_to_json(const GroupPresentation& p) {
  nlohmann::json j;
  j["schema"] = 1;
  j["level"] = p.level;
  j["genus"] = p.genus;
  j["cusp_count"] = p.cusp_count;
  j["free_rank"] = p.free_rank;
  j["psl_index"] = p.psl_index;
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : p.generators)
    gens.push_back({to_long_checked(g.a), to_long_checked(g.b),
                    to_long_checked(g.c), to_long_checked(g.d)});
  j["generators"] = gens;
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : p.relators) rels.push_back(word_to_json(r));
  j["relators"] = rels;
  nlohmann::json cusps = nlohmann::json::array();
  for (std::size_t i = 0; i < p.cusps.size(); ++i) {
    nlohmann::json c;
    c["id"] = p.cusps[i].id;
    c["p"] = to_long_checked(p.cusps[i].representative.p);
    c["q"] = to_long_checked(p.cusps[i].representative.q);
    c["parabolic"] = word_to_json(p.parabolic_words[i]);
    cusps.push_back(c);
  }
  j["cusps"] = cusps;
  return j.dump();
}

GroupPresentation presentation_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("schema").get<int>() != 1)
    throw std::invalid_argument("presentation JSON: unsupported schema");
  GroupPresentation p;
  p.level = j.at("level").get<long>();
  p.genus = j.at("genus").get<long>();
  p.cusp_count = j.at("cusp_count").get<long>();
  p.free_rank = j.at("free_rank").get<long>();
  p.psl_index = j.at("psl_index").get<long>();
  for (const auto& g : j.at("generators"))
    p.generators.push_back(GL2Matrix::from_longs(
        g.at(0).get<long>(), g.at(1).get<long>(), g.at(2).get<long>(),
        g.at(3).get<long>()));
  for (const auto& r : j.at("relators")) p.relators.push_back(word_from_json(r));
  for (const auto& c : j.at("cusps")) {
    CuspClass cl;
    cl.level = p.level;
    cl.id = c.at("id").get<long>();
    cl.representative =
        CuspPoint::from_longs(c.at("p").get<long>(), c.at("q").get<long>());
    p.cusps.push_back(cl);
    p.parabolic_words.push_back(word_from_json(c.at("parabolic")));
  }
  return p;
}

std::string presentation_hash(const GroupPresentation& p) {
  const std::string s = presentation_to_json(p);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

} // namespace emsym
