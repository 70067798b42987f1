#ifndef EMSYM_VERIFY_HPP
#define EMSYM_VERIFY_HPP

#include <string>
#include <vector>

namespace emsym {

struct VerifyResult {
  bool pass = false;
  std::string report_json; // machine-readable report, counterexamples included
};

// Named verification suites over exact data:
//   commutativity - all operator pairs commute exactly on V
//   filtration    - operators preserve every I^m exactly; augmentation masses
//   dichotomy     - every primary component meets each I^m in 0 or itself
//   roots         - exp/log inverses, grouplike/primitive exchange, unique roots
//   symbols       - the defining relations of the symbol calculus
// Unknown names throw std::invalid_argument.
VerifyResult run_verify_suite(const std::string& suite, long level,
                              int truncation, const std::vector<long>& primes);

// Plain-text report cards used by the command line layer.
std::string group_report_json(long level);
std::string algebra_report_json(long level, int truncation);

} // namespace emsym

#endif
