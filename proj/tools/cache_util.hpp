#ifndef EMSYM_TOOLS_CACHE_UTIL_HPP
#define EMSYM_TOOLS_CACHE_UTIL_HPP

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace emsym_cli {

inline std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("EMSYM_CACHE_DIR"); env && *env) return env;
  return ".emsym_cache";
}

// Serializes writers on a per-directory lock file.
class CacheLock {
public:
  explicit CacheLock(const std::string& dir) {
    ::mkdir(dir.c_str(), 0755);
    fd_ = ::open((dir + "/.lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~CacheLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }

private:
  int fd_ = -1;
};

inline std::optional<std::string> cache_read(const std::string& dir,
                                             const std::string& key) {
  std::ifstream in(dir + "/" + key);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline bool cache_write(const std::string& dir, const std::string& key,
                        const std::string& payload) {
  CacheLock lock(dir);
  const std::string tmp = dir + "/" + key + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return false;
    out << payload;
  }
  return ::rename(tmp.c_str(), (dir + "/" + key).c_str()) == 0;
}

} // namespace emsym_cli

#endif
