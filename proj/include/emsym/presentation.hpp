#ifndef EMSYM_PRESENTATION_HPP
#define EMSYM_PRESENTATION_HPP

#include <memory>
#include <string>
#include <vector>

#include "emsym/cusps.hpp"
#include "emsym/words.hpp"

namespace emsym {

// Rewriting data for the word problem: the permutation action of PSL2(Z) on
// the cosets of Gamma(n) together with per-edge expressions in the free
// generating set.
struct SchreierData;

// Free presentation of Gamma(n), n >= 3: independent generators, one
// parabolic word per cusp class generating that cusp's stabilizer, and the
// genus/cusp invariants of the quotient curve.
struct GroupPresentation {
  long level = 0;
  std::vector<GL2Matrix> generators;
  std::vector<GroupWord> relators; // empty: the generating set is a free basis
  std::vector<CuspClass> cusps;
  std::vector<GroupWord> parabolic_words; // indexed by cusp class id
  long genus = 0;
  long cusp_count = 0;
  long free_rank = 0;
  long psl_index = 0; // index of the image of Gamma(n) in PSL2(Z)

  std::shared_ptr<const SchreierData> schreier; // not serialized
};

// Builds the presentation through the coset action of PSL2(Z) = <S, ST> on
// Gamma(n)-cosets: BFS spanning tree, one free generator per non-tree edge
// of the quotient graph, parabolic words solved through the word problem.
// Throws std::invalid_argument for n < 3.
GroupPresentation presentation(long n);

// Expresses gamma in the free generators, with exact matrix equality
// (not merely up to sign). Throws std::invalid_argument when gamma is not
// in Gamma(n).
GroupWord word_problem(const GL2Matrix& gamma, const GroupPresentation& pres);

// Ambient decomposition in SL2(Z): returns letters ('S' or 'T', exponent)
// whose product is exactly m.
std::vector<std::pair<char, long>> st_decompose(const GL2Matrix& m);

std::string presentation_to_json(const GroupPresentation& p);
GroupPresentation presentation_from_json(const std::string& text);

// FNV-1a hash of the canonical JSON form, hex encoded; used as cache key.
std::string presentation_hash(const GroupPresentation& p);

} // namespace emsym

#endif
