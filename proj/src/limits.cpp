#include "qsym/limits.hpp"

#include "qsym/errors.hpp"

#include <cstdlib>
#include <limits>
#include <string>

namespace qsym {

Limits Limits::defaults() {
  Limits l;
  if (const char* env = std::getenv("QSYMKIT_MAX_DIM")) {
    try {
      l.max_tensor_dim = std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("QSYMKIT_MAX_DIM is not an integer: ") + env);
    }
  }
  return l;
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    out *= base;
  }
  return out;
}

void require_tensor_dim(int N, int legs, const Limits& limits) {
  const auto dim = ipow(static_cast<std::uint64_t>(N), legs);
  if (dim > limits.max_tensor_dim)
    throw SizeLimitError("tensor dimension " + std::to_string(N) + "^" + std::to_string(legs) +
                         " exceeds max_tensor_dim " + std::to_string(limits.max_tensor_dim));
}

}  // namespace qsym
