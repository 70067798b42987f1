#include "emsym/rational.hpp"

namespace emsym {

std::optional<Rational> rational_from_string(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Integer num(s, 10);
      return Rational(num);
    }
    Integer num(s.substr(0, slash), 10);
    Integer den(s.substr(slash + 1), 10);
    if (den == 0) return std::nullopt;
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string integer_to_string(const Integer& z) { return z.get_str(); }

} // namespace emsym
