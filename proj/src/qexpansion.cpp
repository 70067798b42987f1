#include "emsym/qexpansion.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace emsym {

bool QExpansion::is_zero() const {
  for (const auto& c : coeffs)
    if (c != 0) return false;
  return true;
}

QExpansion parse_qexpansion(const std::string& text, long level) {
  if (level < 1) throw std::invalid_argument("q-expansion: level must be >= 1");
  QExpansion f;
  f.level = level;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    long l;
    std::string value;
    if (!(ls >> l >> value) || l < 1)
      throw std::invalid_argument("q-expansion: malformed line " +
                                  std::to_string(lineno));
    auto q = rational_from_string(value);
    if (!q)
      throw std::invalid_argument("q-expansion: bad coefficient on line " +
                                  std::to_string(lineno));
    if (l > f.lmax()) f.coeffs.resize(l);
    f.coeffs[l - 1] = *q;
  }
  return f;
}

QExpansion load_qexpansion(const std::string& path, long level) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open q-expansion file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_qexpansion(buf.str(), level);
}

} // namespace emsym
