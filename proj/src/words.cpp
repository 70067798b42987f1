#include "emsym/words.hpp"

namespace emsym {

void push_reduced(GroupWord& w, int gen, long exp) {
  if (exp == 0) return;
  if (!w.empty() && w.back().gen == gen) {
    w.back().exp += exp;
    if (w.back().exp == 0) w.pop_back();
    return;
  }
  w.push_back({gen, exp});
}

void append_reduced(GroupWord& w, const GroupWord& tail) {
  for (const auto& l : tail) push_reduced(w, l.gen, l.exp);
}

GroupWord free_reduce(const GroupWord& w) {
  GroupWord out;
  for (const auto& l : w) push_reduced(out, l.gen, l.exp);
  return out;
}

GroupWord inverse_word(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back({it->gen, -it->exp});
  return out;
}

GL2Matrix evaluate_word(const GroupWord& w,
                        const std::vector<GL2Matrix>& generators) {
  GL2Matrix m;
  for (const auto& l : w) m = m * generators.at(l.gen).pow(l.exp);
  return m;
}

long word_length(const GroupWord& w) {
  long total = 0;
  for (const auto& l : w) total += l.exp < 0 ? -l.exp : l.exp;
  return total;
}

} // namespace emsym
