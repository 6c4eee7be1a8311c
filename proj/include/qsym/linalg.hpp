#ifndef QSYM_LINALG_HPP
#define QSYM_LINALG_HPP

#include "qsym/rational.hpp"

#include <vector>

namespace qsym {

/// Reduced row echelon form computed in place over the rationals.
/// Returns the pivot column of each nonzero row, in order.
std::vector<Eigen::Index> rref_in_place(MatQ& m);

Eigen::Index rank(MatQ m);

/// Basis of {x : m x = 0} as columns, scaled to coprime integer columns.
MatQ nullspace(MatQ m);

/// Inverse of a square nonsingular matrix (Gauss-Jordan). Throws on singular input.
MatQ inverse(const MatQ& m);

/// a * b. Integer-valued inputs (after clearing one common denominator per
/// factor) go through 128-bit accumulation when the entry bound allows it;
/// everything else falls back to rational arithmetic. Result is exact either way.
MatQ product(const MatQ& a, const MatQ& b);

/// Scale every column to integers with gcd 1, leading nonzero positive.
void normalize_columns(MatQ& m);

/// Incremental echelon basis; `add` reports whether the vector was new.
class RowEchelon {
 public:
  explicit RowEchelon(Eigen::Index cols) : cols_(cols) {}

  bool add(VecQ v);
  /// Reduce `v` against the current rows; zero iff `v` lies in the span.
  VecQ reduce(VecQ v) const;
  Eigen::Index rank() const { return static_cast<Eigen::Index>(rows_.size()); }
  Eigen::Index cols() const { return cols_; }
  /// Rows stacked as a (rank x cols) matrix.
  MatQ basis() const;

 private:
  Eigen::Index cols_;
  std::vector<VecQ> rows_;
  std::vector<Eigen::Index> pivots_;
};

template <typename A, typename B>
Mat<typename A::Scalar> kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using S = typename A::Scalar;
  Mat<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Derived>
typename Derived::Scalar frobenius_inner(const Eigen::MatrixBase<Derived>& a,
                                         const Eigen::MatrixBase<Derived>& b) {
  return a.cwiseProduct(b).sum();
}

}  // namespace qsym

#endif
