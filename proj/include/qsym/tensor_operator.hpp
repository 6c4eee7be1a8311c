#ifndef QSYM_TENSOR_OPERATOR_HPP
#define QSYM_TENSOR_OPERATOR_HPP

#include "qsym/limits.hpp"
#include "qsym/partition.hpp"
#include "qsym/rational.hpp"

#include <vector>

namespace qsym {

/// Linear map (C^N)^{⊗source_legs} -> (C^N)^{⊗target_legs}.
///
/// Multi-indices are linearized with the first leg most significant, which
/// makes tensor products of operators plain Kronecker products.
struct TensorOperator {
  int N = 0;
  int source_legs = 0;
  int target_legs = 0;
  MatQ matrix;

  bool operator==(const TensorOperator& other) const {
    return N == other.N && source_legs == other.source_legs && target_legs == other.target_legs &&
           matrix.rows() == other.matrix.rows() && matrix.cols() == other.matrix.cols() &&
           matrix == other.matrix;
  }
};

/// T_p: entry (j, i) is 1 when the joint index (i on top, j below) is
/// constant on every block of p.
TensorOperator t_map(const SetPartition& p, int N, const Limits& limits = Limits::defaults());

TensorOperator adjoint(const TensorOperator& t);

/// a after b.
TensorOperator operator*(const TensorOperator& a, const TensorOperator& b);

TensorOperator tensor(const TensorOperator& a, const TensorOperator& b);

TensorOperator identity_operator(int N, int legs);

/// T_p * columns, without materializing T_p. `columns` has N^upper rows.
MatQ apply_partition(const SetPartition& p, int N, const MatQ& columns);

/// Calls f(source_index, target_index) once per block assignment of p.
template <typename F>
void for_each_assignment(const SetPartition& p, int N, F&& f) {
  const int k = p.upper(), l = p.lower();
  const std::size_t nb = p.block_count();
  std::vector<Eigen::Index> w_src(nb, 0), w_tgt(nb, 0);
  for (std::size_t b = 0; b < nb; ++b)
    for (int x : p.blocks()[b]) {
      if (x <= k)
        w_src[b] += static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(N), k - x));
      else
        w_tgt[b] += static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(N), l - (x - k)));
    }
  std::vector<int> a(nb, 0);
  Eigen::Index src = 0, tgt = 0;
  while (true) {
    f(src, tgt);
    std::size_t b = 0;
    for (; b < nb; ++b) {
      if (++a[b] < N) {
        src += w_src[b];
        tgt += w_tgt[b];
        break;
      }
      src -= w_src[b] * (N - 1);
      tgt -= w_tgt[b] * (N - 1);
      a[b] = 0;
    }
    if (b == nb) break;
  }
}

/// e_{i1} ⊗ ... ⊗ e_{ik}, indices 1-based.
VecQ basis_tensor(int N, const std::vector<int>& indices);

/// 1-based multi-index of a linear position.
std::vector<int> multi_index(Eigen::Index position, int N, int legs);

}  // namespace qsym

#endif
