#include "qsym/tensor_operator.hpp"

#include "qsym/errors.hpp"
#include "qsym/linalg.hpp"

namespace qsym {

TensorOperator t_map(const SetPartition& p, int N, const Limits& limits) {
  if (N < 1) throw PreconditionError("t_map: N must be positive");
  require_tensor_dim(N, p.upper() + p.lower(), limits);
  const auto rows = static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(N), p.lower()));
  const auto cols = static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(N), p.upper()));
  TensorOperator t{N, p.upper(), p.lower(), MatQ::Zero(rows, cols)};
  for_each_assignment(p, N, [&](Eigen::Index src, Eigen::Index tgt) { t.matrix(tgt, src) = 1; });
  return t;
}

TensorOperator adjoint(const TensorOperator& t) {
  return {t.N, t.target_legs, t.source_legs, t.matrix.transpose()};
}

TensorOperator operator*(const TensorOperator& a, const TensorOperator& b) {
  if (a.N != b.N || a.source_legs != b.target_legs)
    throw ShapeError("TensorOperator composition: shapes do not match");
  return {a.N, b.source_legs, a.target_legs, product(a.matrix, b.matrix)};
}

TensorOperator tensor(const TensorOperator& a, const TensorOperator& b) {
  if (a.N != b.N) throw ShapeError("TensorOperator tensor: N differs");
  return {a.N, a.source_legs + b.source_legs, a.target_legs + b.target_legs, kron(a.matrix, b.matrix)};
}

TensorOperator identity_operator(int N, int legs) {
  const auto d = static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(N), legs));
  return {N, legs, legs, MatQ::Identity(d, d)};
}

MatQ apply_partition(const SetPartition& p, int N, const MatQ& columns) {
  const auto src_dim = static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(N), p.upper()));
  if (columns.rows() != src_dim) throw ShapeError("apply_partition: row count is not N^upper");
  const auto rows = static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(N), p.lower()));
  MatQ out = MatQ::Zero(rows, columns.cols());
  for_each_assignment(p, N, [&](Eigen::Index src, Eigen::Index tgt) {
    for (Eigen::Index c = 0; c < columns.cols(); ++c)
      if (columns(src, c) != 0) out(tgt, c) += columns(src, c);
  });
  return out;
}

VecQ basis_tensor(int N, const std::vector<int>& indices) {
  Eigen::Index pos = 0;
  for (int i : indices) {
    if (i < 1 || i > N) throw PreconditionError("basis_tensor: index out of range");
    pos = pos * N + (i - 1);
  }
  VecQ v = VecQ::Zero(static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(N), static_cast<int>(indices.size()))));
  v(pos) = 1;
  return v;
}

std::vector<int> multi_index(Eigen::Index position, int N, int legs) {
  std::vector<int> out(static_cast<std::size_t>(legs));
  for (int t = legs - 1; t >= 0; --t) {
    out[static_cast<std::size_t>(t)] = static_cast<int>(position % N) + 1;
    position /= N;
  }
  return out;
}

}  // namespace qsym
