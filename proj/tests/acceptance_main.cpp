// Acceptance suite: one line per criterion, exact checks at the stated
// tolerances. Exit code 0 only if every criterion passes.

#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "emsym/hecke.hpp"
#include "emsym/periods.hpp"
#include "oracle_algebra.hpp"

using namespace emsym;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& note) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), note.c_str());
  if (!pass) ++g_failures;
}

GroupWord random_word(std::mt19937& rng, const GroupPresentation& p, int len) {
  std::uniform_int_distribution<int> pick(0, int(p.generators.size()) - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  GroupWord w;
  for (int i = 0; i < len; ++i) push_reduced(w, pick(rng), sgn(rng) ? 1 : -1);
  return w;
}

GL2Matrix random_gamma(std::mt19937& rng, const GroupPresentation& p, int len) {
  return evaluate_word(random_word(rng, p, len), p.generators);
}

long psl_index_oracle(long n) {
  long count = 0;
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        for (long d = 0; d < n; ++d)
          if (((a * d - b * c) % n + n) % n == 1) ++count;
  return count / 2;
}

long ap_y2_x3p1(long p) {
  long count = 1;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if ((y * y - (x * x * x + 1)) % p == 0) ++count;
  return p + 1 - count;
}

long ap_y2y_x3(long p) {
  long count = 1;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if ((y * y + y - x * x * x) % p == 0) ++count;
  return p + 1 - count;
}

QExpansion synth(long level, std::vector<std::pair<long, Rational>> terms) {
  QExpansion f;
  f.level = level;
  for (auto& [l, c] : terms) {
    if (l > f.lmax()) f.coeffs.resize(l);
    f.coeffs[l - 1] = c;
  }
  return f;
}

// ---------------------------------------------------------------------------

void criterion_1_group_invariants() {
  bool pass = true;
  std::string note;
  for (long n = 3; n <= 8; ++n) {
    GroupPresentation p = presentation(n);
    const long mu = psl_index_oracle(n);
    if (p.psl_index != mu || p.cusp_count * n != mu ||
        12 * (p.genus - 1) != mu - 6 * p.cusp_count ||
        p.free_rank != 2 * p.genus + p.cusp_count - 1) {
      pass = false;
      note += " level " + std::to_string(n) + " invariants";
    }
    std::mt19937 rng(100 + n);
    for (int trial = 0; trial < 100; ++trial) {
      GL2Matrix g = random_gamma(rng, p, 20);
      if (!(evaluate_word(word_problem(g, p), p.generators) == g)) {
        pass = false;
        note += " level " + std::to_string(n) + " word problem";
        break;
      }
    }
  }
  if (pass) note = "mu, c, g, r identities and 100 word-problem round-trips for n = 3..8";
  report("1 group invariants", pass, note);
}

void criterion_2_algebra_dims() {
  bool pass = true;
  std::string note;
  auto p6 = std::make_shared<GroupPresentation>(presentation(6));
  for (int N = 1; N <= 4; ++N) {
    auto m = build_model(p6, N);
    for (int d = 0; d <= N; ++d)
      if (m->graded_dims[d] != d + 1) pass = false;
    if (m->graded_dims != oracle::surface_quotient_dims(1, N)) pass = false;
  }
  if (!pass) note += " n=6 dims;";
  auto p7 = std::make_shared<GroupPresentation>(presentation(7));
  auto m7 = build_model(p7, 3);
  bool ok7 = m7->graded_dims == std::vector<long>{1, 6, 35, 204} &&
             m7->graded_dims == oracle::surface_quotient_dims(3, 3);
  if (!ok7) {
    pass = false;
    note += " n=7 dims;";
  }
  if (pass)
    note = "n=6 graded dims m+1 up to N=4; n=7 N=3 dims (1,6,35,204) match the brute-force oracle";
  report("2 algebra dimensions", pass, note);
}

void criterion_3_completion_suite() {
  auto p6 = std::make_shared<GroupPresentation>(presentation(6));
  auto m = build_model(p6, 3);
  std::mt19937 rng(33);
  int fail_exp = 0, fail_bij = 0, fail_root = 0;
  for (int trial = 0; trial < 100; ++trial) {
    AlgebraElement g = phi(random_word(rng, *p6, 6), m);
    AlgebraElement lg = log_element(g);
    if (!(exp_element(lg) == g && log_element(exp_element(lg)) == lg)) ++fail_exp;
    if (!(is_grouplike(g) && is_primitive(lg) && is_grouplike(exp_element(lg))))
      ++fail_bij;
    long t = 2 + (trial % 3 == 1) + 3 * (trial % 3 == 2); // 2, 3, 5
    AlgebraElement gt = one_element(m);
    for (long i = 0; i < t; ++i) gt = mul(gt, g);
    if (!(t_th_root(gt, t) == g)) ++fail_root;
  }
  const bool pass = fail_exp == 0 && fail_bij == 0 && fail_root == 0;
  report("3 exp/log, grouplike/primitive, unique roots", pass,
         pass ? "100 randomized cases each, exact"
              : "failures: exp/log " + std::to_string(fail_exp) + ", bijection " +
                    std::to_string(fail_bij) + ", roots " + std::to_string(fail_root));
}

void criterion_4_symbol_relations() {
  auto p6 = std::make_shared<GroupPresentation>(presentation(6));
  auto m = build_model(p6, 2);
  const GroupPresentation& pres = *p6;
  std::mt19937 rng(44);
  int failures = 0;
  for (const auto& cls : pres.cusps) {
    const CuspPoint base = cls.representative;
    if (!(symbol_to_element(base, base, cls, m) == one_element(m))) ++failures;
    GL2Matrix g1 = random_gamma(rng, pres, 5), g2 = random_gamma(rng, pres, 5);
    CuspPoint a = act(g1, base), b = act(g2, base), c = act(g1 * g2, base);
    if (!(mul(symbol_to_element(a, b, cls, m), symbol_to_element(b, c, cls, m)) ==
          symbol_to_element(a, c, cls, m)))
      ++failures;
    GL2Matrix g = random_gamma(rng, pres, 5);
    if (!(symbol_to_element(act(g, a), act(g, b), cls, m) ==
          symbol_to_element(a, b, cls, m)))
      ++failures;
    GL2Matrix w = cusp_reduce(a, 6, pres.cusps).second;
    GL2Matrix pia = w * evaluate_word(pres.parabolic_words[cls.id], pres.generators) *
                    w.inv_sl2();
    if (!(symbol_to_element(a, act(pia, a), cls, m) == one_element(m))) ++failures;
    AlgebraElement acc = one_element(m);
    for (int k = 0; k <= m->truncation; ++k) {
      GL2Matrix h = random_gamma(rng, pres, 4);
      acc = mul(acc, symbol_to_element(base, act(h, base), cls, m) - one_element(m));
    }
    if (!acc.is_zero()) ++failures;
  }
  report("4 symbol relations", failures == 0,
         failures == 0
             ? "identity, composition, invariance, parabolic triviality, depth vanish: exact"
             : std::to_string(failures) + " relation failures");
}

void criterion_5_hecke_structure() {
  auto p6 = std::make_shared<GroupPresentation>(presentation(6));
  auto m = build_model(p6, 2);
  const GroupPresentation& pres = *p6;

  const auto reps5 = coset_reps(6, GL2Matrix::from_longs(1, 0, 0, 5), pres);
  const auto reps7 = coset_reps(6, GL2Matrix::from_longs(1, 0, 0, 7), pres);
  report("5a coset counts", reps5.size() == 6 && reps7.size() == 8,
         "p=5 gives " + std::to_string(reps5.size()) + ", p=7 gives " +
             std::to_string(reps7.size()));

  // Literal well-definedness under gamma -> gamma * pi, pi the parabolic
  // stabilizer word of a_j in Gamma(n). See the decisions ledger: the
  // per-point construction is not invariant under this replacement (only
  // the fiber-summed operator is); the check runs as stated.
  HeckeContext ctx(m, HeckeKind::Tp, 5);
  std::mt19937 rng(55);
  int wd_failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& cls = pres.cusps[trial % pres.cusps.size()];
    CuspPoint a_j = act(random_gamma(rng, pres, 3), cls.representative);
    GL2Matrix gamma = random_gamma(rng, pres, 4);
    GL2Matrix w = cusp_reduce(a_j, 6, pres.cusps).second;
    GL2Matrix pi = w *
                   evaluate_word(pres.parabolic_words[cls.id], pres.generators) *
                   w.inv_sl2();
    if (!(local_symbol_image(ctx, a_j, gamma) ==
          local_symbol_image(ctx, a_j, gamma * pi)))
      ++wd_failures;
  }
  report("5b well-definedness under gamma -> gamma*pi (literal)", wd_failures == 0,
         std::to_string(wd_failures) +
             "/50 symbols change; fiber-summed operator is invariant (see 5d); "
             "analysis in the decisions ledger");

  int mult_failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& cls = pres.cusps[trial % pres.cusps.size()];
    SummandIndex src{1, cls.id};
    AlgebraElement x = phi(random_word(rng, pres, 4), m);
    AlgebraElement y = phi(random_word(rng, pres, 4), m);
    auto [t1, ix] = hecke_local(ctx, cls.representative, x, src);
    auto [t2, iy] = hecke_local(ctx, cls.representative, y, src);
    auto [t3, ixy] = hecke_local(ctx, cls.representative, mul(x, y), src);
    if (!(t1 == t3 && ixy == mul(ix, iy))) ++mult_failures;
  }
  report("5c local multiplicativity", mult_failures == 0,
         mult_failures == 0 ? "50 random grouplike pairs, exact"
                            : std::to_string(mult_failures) + " failures");

  std::uniform_int_distribution<int> pw(1, 3);
  std::vector<GL2Matrix> twists;
  for (long c = 0; c < pres.cusp_count; ++c)
    twists.push_back(
        evaluate_word(pres.parabolic_words[c], pres.generators).pow(pw(rng)));
  const bool sum_invariant =
      assemble(hecke_operator(m, HeckeKind::Tp, 5)) ==
      assemble(hecke_operator(m, HeckeKind::Tp, 5, &twists));
  report("5d summed operator invariance", sum_invariant,
         "E(T(5)) on V(6, N=2) unchanged under per-class stabilizer retwists");
}

void criterion_6_global_laws() {
  auto p6 = std::make_shared<GroupPresentation>(presentation(6));
  auto m = build_model(p6, 2);
  std::vector<QMatrix> ops;
  std::vector<HeckeOperator> hs;
  for (long p : {5L, 7L})
    for (HeckeKind kind : {HeckeKind::Tp, HeckeKind::Tpp}) {
      hs.push_back(hecke_operator(m, kind, p));
      ops.push_back(assemble(hs.back()));
    }
  bool commute = true;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (!(ops[i] * ops[j] == ops[j] * ops[i])) commute = false;
  report("6a exact commutativity", commute,
         "E(T(5)), E(T(5,5)), E(T(7)), E(T(7,7)) on V(6, N=2)");

  bool filt = true, mass = true;
  for (const auto& h : hs) {
    filt = filt && preserves_filtration(h);
    mass = mass && augmentation_mass_ok(h);
  }
  report("6b filtration preservation", filt, "E(T(g)) I^m inside I^m, exact, m <= N");
  report("6c augmentation masses", mass, "p+1 for T(p), 1 for T(p,p)");

  bool order_ok = true;
  for (long p : {5L, 7L}) {
    // multiplicative order of p^2 mod 6
    long ord = 1, acc = (p * p) % 6;
    while (acc != 1 && ord < 64) {
      acc = (acc * (p * p) % 6) % 6;
      ++ord;
    }
    QMatrix mat = assemble(hecke_operator(m, HeckeKind::Tpp, p));
    QMatrix powm = QMatrix::identity(mat.rows());
    for (long i = 0; i < ord; ++i) powm = powm * mat;
    if (!(powm == QMatrix::identity(mat.rows()))) order_ok = false;
    if (ord > 1) {
      QMatrix prev = QMatrix::identity(mat.rows());
      for (long i = 0; i + 1 < ord; ++i) prev = prev * mat;
      if (prev == QMatrix::identity(mat.rows())) order_ok = false;
    }
  }
  report("6d finite order of E(T(p,p))", order_ok, "order equals ord(p^2 mod 6)");
}

void criterion_7_eigenstructure() {
  const bool oracle5 = ap_y2_x3p1(5) == 0 && ap_y2y_x3(5) == 0;
  auto p6 = std::make_shared<GroupPresentation>(presentation(6));
  auto m = build_model(p6, 1);
  GradeSpectrum g5 = grade_spectrum(m, HeckeKind::Tp, 5, 1);
  bool nil = g5.charpoly.degree() == 48;
  for (const auto& rm : g5.moduli)
    if (rm.modulus != 0.0) nil = false;
  report("7a E(T(5)) nilpotent on grade 1", oracle5 && nil,
         "a_5 = 0 by point counting on both candidate curves; charpoly = x^48");

  const long a7a = std::labs(ap_y2_x3p1(7)), a7b = std::labs(ap_y2y_x3(7));
  std::set<long> candidates = {a7a, a7b};
  GradeSpectrum g7 = grade_spectrum(m, HeckeKind::Tp, 7, 1);
  double nonzero = -1;
  bool shared = true;
  for (const auto& rm : g7.moduli) {
    if (rm.modulus < 1e-8) continue;
    if (nonzero < 0) nonzero = rm.modulus;
    if (std::fabs(rm.modulus - nonzero) > 1e-8) shared = false;
    if (rm.error > 1e-8) shared = false;
  }
  const long realized = nonzero > 0 ? std::lround(nonzero) : -1;
  const bool integral = nonzero > 0 && std::fabs(nonzero - double(realized)) <= 1e-8;
  const bool in_candidates = candidates.count(realized) == 1;
  const bool pinned = realized == 4; // recorded at first run
  report("7b E(T(7)) grade-1 moduli", shared && integral && in_candidates && pinned,
         "nonzero moduli all " + std::to_string(realized) +
             " (candidates from point counts: {" + std::to_string(a7a) + "," +
             std::to_string(a7b) + "}), pinned value 4, tolerance 1e-8");
}

void criterion_8_dichotomy() {
  auto p6 = std::make_shared<GroupPresentation>(presentation(6));
  auto m = build_model(p6, 3);
  DichotomyReport rep = verify_dichotomy(m, {5, 7, 11});
  long total = 0;
  for (const auto& c : rep.detail.components) total += c.basis.cols();
  bool pass = rep.pass && total == rep.detail.ambient_dim;
  std::string note = "n=6, N=3, primes {5,7,11}: " +
                     std::to_string(rep.detail.components.size()) +
                     " components, dims sum to " + std::to_string(total);
  if (rep.coarse_warning) {
    DichotomyReport wider = verify_dichotomy(m, {5, 7, 11, 13});
    pass = wider.pass;
    note += "; coarse-family warning fired, re-ran with {5,7,11,13}";
  }
  report("8 filtration dichotomy", pass, note);
}

void criterion_9_periods() {
  QExpansion eta = load_qexpansion(std::string(TEST_DATA_DIR) + "/eta4_level6.qexp", 6);
  std::vector<QExpansion> pool = {
      synth(6, {{1, Rational(1)}}),
      synth(6, {{1, Rational(1)}, {2, make_rational(-1, 2)}, {3, make_rational(1, 3)}}),
      synth(6, {{2, Rational(1)}, {5, Rational(2)}}),
      eta};
  bool shuffle_ok = true;
  double worst = 0;
  PathSpec path;
  path.start = Complex::of(0.0, 1.0);
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); ++j) {
      NumericValue ab = iterated_integral({pool[i], pool[j]}, path);
      NumericValue ba = iterated_integral({pool[j], pool[i]}, path);
      NumericValue a = iterated_integral({pool[i]}, path);
      NumericValue b = iterated_integral({pool[j]}, path);
      Complex lhs{ab.re + ba.re, ab.im + ba.im};
      Complex rhs = Complex{a.re, a.im} * Complex{b.re, b.im};
      const double resid = std::hypot((lhs.re - rhs.re).to_double(),
                                      (lhs.im - rhs.im).to_double());
      const double combined = ab.error + ba.error + a.error * (1 + b.abs_d()) +
                              b.error * (1 + a.abs_d());
      if (resid > combined || combined > 1e-6) shuffle_ok = false;
      worst = std::max(worst, combined);
    }
  char buf[96];
  std::snprintf(buf, sizeof buf, "all pairs; worst combined error %.2e <= 1e-6", worst);
  report("9a shuffle identity", shuffle_ok, buf);

  // m=1 against an independently coded direct L-sum, matched truncation
  bool mlv_ok = true;
  const double y = 1.0 / 64;
  for (const auto& f : {pool[1], eta}) {
    NumericValue got = multiple_l_fixed_y({f}, make_rational(1, 1), y);
    const Real two_pi = Real::of(2L) * Real::pi();
    Complex direct = Complex::of(0.0, 0.0);
    for (long l = 1; l <= f.lmax(); ++l) {
      if (f.c(l) == 0) continue;
      Real theta = two_pi * Real::of(l) / Real::of(6L);
      Complex phase = unit_phase(theta);
      Real damp = exp(-(two_pi * Real::of(l) * Real::of(y) / Real::of(6L)));
      Real cl = Real::of(f.c(l)) / Real::of(l);
      direct.re += cl * phase.re * damp;
      direct.im += cl * phase.im * damp;
    }
    if (std::hypot((got.re - direct.re).to_double(),
                   (got.im - direct.im).to_double()) > 1e-10)
      mlv_ok = false;
  }
  report("9b depth-1 nested sum vs direct L-sum", mlv_ok,
         "matched truncation, tolerance 1e-10");

  Real::set_default_bits(256);
  Real v1 = sqrt(Real::of(3L)), v2 = Real::pi();
  NumericValue t{Real::of(5L) * v1 - Real::of(2L) * v2, Real::of(0L), 1e-40};
  auto rel = relation_detect(t, {{v1, Real::of(0L), 1e-40}, {v2, Real::of(0L), 1e-40}}, 20);
  Real::set_default_bits(128);
  const bool planted =
      rel && rel->size() == 3 && (*rel)[0] == 1 && (*rel)[1] == -5 && (*rel)[2] == 2;
  report("9c planted relation recovery", planted, "coefficients (1, -5, 2), exact");
}

void criterion_10_exploration() {
  // The tool must run and either report a candidate relation with residual
  // below the combined error, or a clean miss; never a spurious claim.
  QExpansion eta = load_qexpansion(std::string(TEST_DATA_DIR) + "/eta4_level6.qexp", 6);
  bool ran = true, no_spurious = true;
  std::string outcome;
  try {
    NumericValue target = multiple_L({eta, eta}, Rational(0));
    NumericValue l1 = multiple_L({eta}, Rational(0));
    NumericValue l1sq{l1.re * l1.re - l1.im * l1.im,
                      l1.re * l1.im + l1.im * l1.re,
                      2 * l1.error * (1 + l1.abs_d())};
    std::optional<std::vector<Integer>> rel;
    long used_bound = 0;
    for (long bound : {40L, 10L, 3L}) {
      try {
        rel = relation_detect(target, {l1sq, l1}, bound);
        used_bound = bound;
        break;
      } catch (const std::runtime_error&) {
        // precision cannot support this bound; tighten and retry
      }
    }
    if (used_bound == 0) {
      outcome = "no bound supportable at the available precision: clean refusal";
    } else if (rel) {
      // confirm the reported relation really is numerically consistent
      Real acc = Real::of((*rel)[0].get_si()) * target.re +
                 Real::of((*rel)[1].get_si()) * l1sq.re +
                 Real::of((*rel)[2].get_si()) * l1.re;
      double slack = 0;
      slack += std::fabs((*rel)[0].get_d()) * target.error;
      slack += std::fabs((*rel)[1].get_d()) * l1sq.error;
      slack += std::fabs((*rel)[2].get_d()) * l1.error;
      if (std::fabs(acc.to_double()) > slack + 1e-12) no_spurious = false;
      outcome = "candidate relation at bound " + std::to_string(used_bound) +
                " with residual below the combined error";
    } else {
      outcome = "none found at bound " + std::to_string(used_bound);
    }
  } catch (...) {
    ran = false;
    outcome = "tool failed to run";
  }
  report("10 product-decomposition exploration", ran && no_spurious,
         outcome + " (exploratory; not an existence claim)");
}

} // namespace

int main() {
  std::printf("acceptance suite: exact Hecke machinery on truncated algebras\n");
  criterion_1_group_invariants();
  criterion_2_algebra_dims();
  criterion_3_completion_suite();
  criterion_4_symbol_relations();
  criterion_5_hecke_structure();
  criterion_6_global_laws();
  criterion_7_eigenstructure();
  criterion_8_dichotomy();
  criterion_9_periods();
  criterion_10_exploration();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion line(s) failed\n", g_failures);
  return 1;
}
