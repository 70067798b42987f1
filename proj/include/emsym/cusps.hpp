#ifndef EMSYM_CUSPS_HPP
#define EMSYM_CUSPS_HPP

#include <utility>
#include <vector>

#include "emsym/gl2.hpp"

namespace emsym {

// One Gamma(n)-orbit of P^1(Q). The representative is the least point of the
// orbit in the order (q, then p mod n, then p), which fixes all downstream
// matrix layouts.
struct CuspClass {
  long level = 0;
  long id = 0;
  CuspPoint representative;
  bool operator==(const CuspClass& o) const = default;
};

// Complete duplicate-free list of cusp classes of Gamma(n), n >= 3,
// ordered by representative. Two points are equivalent iff their coprime
// coordinate pairs agree up to sign mod n.
std::vector<CuspClass> cusp_classes(long n);

// Class of x together with a witness w in Gamma(n) such that
// act(w, class.representative) == x.
std::pair<CuspClass, GL2Matrix> cusp_reduce(const CuspPoint& x, long n);

// Same, but against a precomputed class list (avoids re-enumeration).
std::pair<CuspClass, GL2Matrix> cusp_reduce(const CuspPoint& x, long n,
                                            const std::vector<CuspClass>& classes);

} // namespace emsym

#endif
