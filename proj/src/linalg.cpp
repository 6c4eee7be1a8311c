#include "qsym/linalg.hpp"

#include "qsym/errors.hpp"

#include <cmath>
#include <cstdint>
#include <optional>

namespace qsym {

std::vector<Eigen::Index> rref_in_place(MatQ& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    const Rational inv = 1 / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c)
      if (m(row, c) != 0) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c)
        if (m(row, c) != 0) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Eigen::Index rank(MatQ m) { return static_cast<Eigen::Index>(rref_in_place(m).size()); }

MatQ nullspace(MatQ m) {
  const Eigen::Index n = m.cols();
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  MatQ basis = MatQ::Zero(n, n - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index out = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, out) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], out) = -m(static_cast<Eigen::Index>(r), f);
    ++out;
  }
  normalize_columns(basis);
  return basis;
}

MatQ inverse(const MatQ& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse: matrix is not square");
  const Eigen::Index n = m.rows();
  MatQ aug(n, 2 * n);
  aug << m, MatQ::Identity(n, n);
  const auto pivots = rref_in_place(aug);
  if (static_cast<Eigen::Index>(pivots.size()) < n || (n > 0 && pivots.back() >= n))
    throw PreconditionError("inverse: matrix is singular");
  return aug.rightCols(n);
}

namespace {

struct IntegerImage {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> values;
  Integer denominator;
  double max_abs = 0.0;
};

// m = values / denominator with int64 values, if such a form exists.
std::optional<IntegerImage> integer_image(const MatQ& m) {
  Integer den = 1;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) den = boost::multiprecision::lcm(den, qsym::denominator(m(i, j)));
  IntegerImage out{decltype(IntegerImage::values)(m.rows(), m.cols()), den, 0.0};
  const Integer bound = Integer(1) << 62;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) == 0) {
        out.values(i, j) = 0;
        continue;
      }
      const Integer v = qsym::numerator(m(i, j)) * (den / qsym::denominator(m(i, j)));
      if (v >= bound || v <= -bound) return std::nullopt;
      const auto x = v.convert_to<std::int64_t>();
      out.values(i, j) = x;
      out.max_abs = std::max(out.max_abs, std::abs(static_cast<double>(x)));
    }
  return out;
}

}  // namespace

MatQ product(const MatQ& a, const MatQ& b) {
  if (a.cols() != b.rows()) throw ShapeError("product: inner dimensions differ");
  const auto ia = integer_image(a);
  const auto ib = ia ? integer_image(b) : std::nullopt;
  // |sum| <= inner * max|a| * max|b| must stay well inside 2^126.
  if (!ia || !ib || std::log2(std::max(1.0, ia->max_abs)) + std::log2(std::max(1.0, ib->max_abs)) +
                            std::log2(static_cast<double>(std::max<Eigen::Index>(1, a.cols()))) >= 125.0) {
    MatQ out = MatQ::Zero(a.rows(), b.cols());
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        if (a(i, k) == 0) continue;
        for (Eigen::Index j = 0; j < b.cols(); ++j)
          if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }
  const Rational scale = Rational(1) / Rational(ia->denominator * ib->denominator);
  const auto& av = ia->values;
  const auto& bv = ib->values;
  std::vector<__int128> acc(static_cast<std::size_t>(b.cols()));
  MatQ out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const std::int64_t x = av(i, k);
      if (x == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) acc[static_cast<std::size_t>(j)] += static_cast<__int128>(x) * bv(k, j);
    }
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      __int128 v = acc[static_cast<std::size_t>(j)];
      if (v == 0) {
        out(i, j) = 0;
        continue;
      }
      const bool neg = v < 0;
      unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
      Integer z = static_cast<std::uint64_t>(u >> 64);
      z <<= 64;
      z += static_cast<std::uint64_t>(u);
      if (neg) z = -z;
      out(i, j) = Rational(z) * scale;
    }
  }
  return out;
}

void normalize_columns(MatQ& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Integer lcm = 1;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0) lcm = boost::multiprecision::lcm(lcm, denominator(m(r, c)));
    Integer g = 0;
    int sign = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) == 0) continue;
      Rational scaled = m(r, c) * Rational(lcm);
      Integer num = numerator(scaled);
      if (sign == 0) sign = num < 0 ? -1 : 1;
      g = boost::multiprecision::gcd(g, num < 0 ? Integer(-num) : num);
    }
    if (g == 0) continue;
    const Rational factor = Rational(lcm) / Rational(g) * sign;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0) m(r, c) *= factor;
  }
}

VecQ RowEchelon::reduce(VecQ v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational f = v(pivots_[i]);
    if (f == 0) continue;
    const VecQ& r = rows_[i];
    for (Eigen::Index c = pivots_[i]; c < cols_; ++c)
      if (r(c) != 0) v(c) -= f * r(c);
  }
  return v;
}

bool RowEchelon::add(VecQ v) {
  if (v.size() != cols_) throw ShapeError("RowEchelon::add: length mismatch");
  v = reduce(std::move(v));
  Eigen::Index pivot = -1;
  for (Eigen::Index c = 0; c < cols_; ++c)
    if (v(c) != 0) {
      pivot = c;
      break;
    }
  if (pivot < 0) return false;
  const Rational inv = 1 / v(pivot);
  for (Eigen::Index c = pivot; c < cols_; ++c)
    if (v(c) != 0) v(c) *= inv;
  // Keep rows ordered by pivot so a single forward pass reduces.
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  const auto pos = it - pivots_.begin();
  pivots_.insert(it, pivot);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

MatQ RowEchelon::basis() const {
  MatQ out(rank(), cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows_[i].transpose();
  return out;
}

}  // namespace qsym
