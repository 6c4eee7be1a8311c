#ifndef QSYM_RATIONAL_HPP
#define QSYM_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>

namespace qsym {

// Exact scalar. Expression templates are off so the type behaves like a
// plain value inside Eigen kernels.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatQ = Mat<Rational>;
using VecQ = Vec<Rational>;

template <typename Scalar>
struct is_exact : std::false_type {};
template <>
struct is_exact<Rational> : std::true_type {};
template <typename Scalar>
inline constexpr bool is_exact_v = is_exact<Scalar>::value;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }
inline double magnitude(const Rational& q) { return std::abs(q.convert_to<double>()); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

inline bool is_zero(const Rational& q) { return q == 0; }

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const Rational& q) { return q.str(); }
Rational rational_from_string(const std::string& text);

/// Largest entry magnitude, as a double. Exact callers should compare
/// against zero with `is_zero_matrix` instead.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::max(best, magnitude(m(i, j)));
  return best;
}

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!(m(i, j) == typename Derived::Scalar(0))) return false;
  return true;
}

/// Deviation test shared by the exact and floating validators: exact scalars
/// must vanish identically, inexact ones within `tol`.
template <typename Derived>
bool within(const Eigen::MatrixBase<Derived>& deviation, double tol) {
  if constexpr (is_exact_v<typename Derived::Scalar>)
    return is_zero_matrix(deviation);
  else
    return max_abs(deviation) <= tol;
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions).
Rational rationalize(double x, std::int64_t max_den);

}  // namespace qsym

#endif
