#include "mms/numfmt.hpp"

#include <charconv>
#include <cstdio>

namespace mms {

std::string fmt_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_sig(double v, int sig) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", sig, v);
  return std::string(buf);
}

}  // namespace mms
