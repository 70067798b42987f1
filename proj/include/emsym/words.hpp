#ifndef EMSYM_WORDS_HPP
#define EMSYM_WORDS_HPP

#include <vector>

#include "emsym/gl2.hpp"

namespace emsym {

// Run-length letter: generator index with a nonzero integer exponent.
struct WordLetter {
  int gen = 0;
  long exp = 0;
  bool operator==(const WordLetter& o) const = default;
};

// Freely reduced word: adjacent letters have distinct generators and all
// exponents are nonzero.
using GroupWord = std::vector<WordLetter>;

// Merges adjacent runs and drops vanishing exponents.
GroupWord free_reduce(const GroupWord& w);

GroupWord inverse_word(const GroupWord& w);

// Push one letter onto a word kept in reduced form.
void push_reduced(GroupWord& w, int gen, long exp);

// Append a whole word onto a reduced word, reducing across the seam.
void append_reduced(GroupWord& w, const GroupWord& tail);

GL2Matrix evaluate_word(const GroupWord& w,
                        const std::vector<GL2Matrix>& generators);

long word_length(const GroupWord& w); // total |exp|

} // namespace emsym

#endif
