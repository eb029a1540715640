#include "heatlab/io.hpp"

#include <charconv>

namespace heatlab {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace heatlab
