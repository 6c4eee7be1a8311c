#ifndef QSYM_LIMITS_HPP
#define QSYM_LIMITS_HPP

#include <cstddef>
#include <cstdint>

namespace qsym {

struct Limits {
  int max_total_points = 12;
  // Cap on N^(legs) of any dense tensor that gets materialized.
  std::uint64_t max_tensor_dim = 20000;

  /// Defaults, with QSYMKIT_MAX_DIM overriding the tensor cap.
  static Limits defaults();
};

/// N^k, saturating at UINT64_MAX.
std::uint64_t ipow(std::uint64_t base, int exp);

void require_tensor_dim(int N, int legs, const Limits& limits);

}  // namespace qsym

#endif
