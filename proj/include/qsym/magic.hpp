#ifndef QSYM_MAGIC_HPP
#define QSYM_MAGIC_HPP

#include "qsym/errors.hpp"
#include "qsym/linalg.hpp"
#include "qsym/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace qsym {

/// N x N matrix whose entries are d x d matrices: a finite-dimensional model
/// of C(S_N^+) (magic unitary) or of C(H_N^+) (hyperoctahedral model).
/// Indices are 0-based.
template <typename Scalar>
struct MatrixModel {
  int N = 0;
  int d = 0;
  std::vector<Mat<Scalar>> entries;  // row-major, entry (i, j) at i * N + j

  MatrixModel() = default;
  MatrixModel(int n, int dim) : N(n), d(dim), entries(static_cast<std::size_t>(n * n), Mat<Scalar>::Zero(dim, dim)) {}

  Mat<Scalar>& operator()(int i, int j) { return entries[static_cast<std::size_t>(i * N + j)]; }
  const Mat<Scalar>& operator()(int i, int j) const { return entries[static_cast<std::size_t>(i * N + j)]; }
};

template <typename Scalar>
using MagicUnitary = MatrixModel<Scalar>;
template <typename Scalar>
using HyperoctahedralModel = MatrixModel<Scalar>;

struct CheckResult {
  std::string check;
  bool pass = true;
  double max_dev = 0.0;
  std::string witness;
};

struct Report {
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
  double max_dev() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.max_dev);
    return m;
  }
};

namespace detail {

/// Accumulates one named identity over many index tuples.
template <typename Scalar>
class Check {
 public:
  Check(std::string name, double tol) : result_{std::move(name), true, 0.0, {}}, tol_(tol) {}

  template <typename Derived>
  void observe(const Eigen::MatrixBase<Derived>& deviation, const std::string& where) {
    const double dev = max_abs(deviation);
    const bool ok = within(deviation, tol_);
    if (dev > result_.max_dev || (!ok && result_.pass)) {
      result_.max_dev = std::max(result_.max_dev, dev);
      if (!ok || result_.witness.empty()) result_.witness = where;
    }
    if (!ok) result_.pass = false;
  }

  CheckResult done() {
    if (result_.pass) result_.witness.clear();
    return result_;
  }

 private:
  CheckResult result_;
  double tol_;
};

inline std::string at(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
inline std::string at(int i, int j, int k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

template <typename Scalar>
void check_shape(const MatrixModel<Scalar>& m) {
  if (m.N < 1 || static_cast<int>(m.entries.size()) != m.N * m.N)
    throw ShapeError("matrix model: expected N*N entries");
  for (const auto& e : m.entries)
    if (e.rows() != m.d || e.cols() != m.d) throw ShapeError("matrix model: entry is not d x d");
}

}  // namespace detail

/// Magic-unitary relations: projections, row and column sums, plus the row
/// and column orthogonality they imply (checked separately, never assumed).
/// Exact scalars use zero tolerance regardless of `tol`.
template <typename Scalar>
Report validate_magic(const MagicUnitary<Scalar>& u, double tol = 1e-9) {
  detail::check_shape(u);
  using M = Mat<Scalar>;
  const M one = M::Identity(u.d, u.d);
  detail::Check<Scalar> proj("projection", tol), adj("self_adjoint", tol), rows("row_sums", tol),
      cols("column_sums", tol), row_orth("row_orthogonality", tol), col_orth("column_orthogonality", tol);
  for (int i = 0; i < u.N; ++i) {
    M r = -one, c = -one;
    for (int j = 0; j < u.N; ++j) {
      const M& x = u(i, j);
      proj.observe(M(x * x - x), detail::at(i, j));
      adj.observe(M(x.adjoint() - x), detail::at(i, j));
      r += x;
      c += u(j, i);
      for (int k = 0; k < u.N; ++k) {
        if (k == j) continue;
        row_orth.observe(M(x * u(i, k)), detail::at(i, j, k));
        col_orth.observe(M(u(j, i) * u(k, i)), detail::at(j, k, i));
      }
    }
    rows.observe(r, "row " + std::to_string(i));
    cols.observe(c, "column " + std::to_string(i));
  }
  return {{proj.done(), adj.done(), rows.done(), cols.done(), row_orth.done(), col_orth.done()}};
}

/// Hyperoctahedral relations: self-adjoint entries with projection squares
/// summing to 1 along rows and columns; derived u³ = u and u·u² = u²·u = u.
template <typename Scalar>
Report validate_hyperoctahedral(const HyperoctahedralModel<Scalar>& u, double tol = 1e-9) {
  detail::check_shape(u);
  using M = Mat<Scalar>;
  const M one = M::Identity(u.d, u.d);
  detail::Check<Scalar> adj("self_adjoint", tol), sq("square_projection", tol), rows("square_row_sums", tol),
      cols("square_column_sums", tol), cube("cube", tol), absorb("absorbs_square", tol);
  for (int i = 0; i < u.N; ++i) {
    M r = -one, c = -one;
    for (int j = 0; j < u.N; ++j) {
      const M& x = u(i, j);
      const M v = x * x;
      adj.observe(M(x.adjoint() - x), detail::at(i, j));
      sq.observe(M(v * v - v), detail::at(i, j));
      cube.observe(M(v * x - x), detail::at(i, j));
      absorb.observe(M(x * v - v * x), detail::at(i, j));
      r += v;
      c += u(j, i) * u(j, i);
    }
    rows.observe(r, "row " + std::to_string(i));
    cols.observe(c, "column " + std::to_string(i));
  }
  return {{adj.done(), sq.done(), rows.done(), cols.done(), cube.done(), absorb.done()}};
}

/// u_ij = δ_{σ(j), i} with scalar (1 x 1) entries; sigma[j] is σ(j), 0-based.
template <typename Scalar>
MagicUnitary<Scalar> perm_model(const std::vector<int>& sigma) {
  const int N = static_cast<int>(sigma.size());
  std::vector<bool> seen(sigma.size(), false);
  for (int s : sigma) {
    if (s < 0 || s >= N || seen[static_cast<std::size_t>(s)]) throw PreconditionError("perm_model: not a permutation");
    seen[static_cast<std::size_t>(s)] = true;
  }
  MagicUnitary<Scalar> u(N, 1);
  for (int j = 0; j < N; ++j) u(sigma[static_cast<std::size_t>(j)], j)(0, 0) = Scalar(1);
  return u;
}

template <typename Scalar>
MagicUnitary<Scalar> counit_model(int N) {
  std::vector<int> id(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) id[static_cast<std::size_t>(i)] = i;
  return perm_model<Scalar>(id);
}

/// Entries Σ_k u1_ik ⊗ u2_kj: the coproduct evaluated at the pair of models.
template <typename Scalar>
MatrixModel<Scalar> tensor_model(const MatrixModel<Scalar>& u1, const MatrixModel<Scalar>& u2) {
  if (u1.N != u2.N) throw ShapeError("tensor_model: N differs");
  MatrixModel<Scalar> out(u1.N, u1.d * u2.d);
  for (int i = 0; i < u1.N; ++i)
    for (int j = 0; j < u1.N; ++j)
      for (int k = 0; k < u1.N; ++k) out(i, j) += kron(u1(i, k), u2(k, j));
  return out;
}

/// Block-diagonal model: relations hold iff they hold in both summands.
template <typename Scalar>
MatrixModel<Scalar> direct_sum(const MatrixModel<Scalar>& a, const MatrixModel<Scalar>& b) {
  if (a.N != b.N) throw ShapeError("direct_sum: N differs");
  MatrixModel<Scalar> out(a.N, a.d + b.d);
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    out.entries[k].topLeftCorner(a.d, a.d) = a.entries[k];
    out.entries[k].bottomRightCorner(b.d, b.d) = b.entries[k];
  }
  return out;
}

/// N = 4 model [[p, 1-p, 0, 0], [1-p, p, 0, 0], [0, 0, q, 1-q], [0, 0, 1-q, q]].
template <typename Scalar>
MagicUnitary<Scalar> block_model(const Mat<Scalar>& p, const Mat<Scalar>& q) {
  if (p.rows() != p.cols() || q.rows() != p.rows() || q.cols() != p.cols())
    throw ShapeError("block_model: p and q must be square of one size");
  const Eigen::Index d = p.rows();
  const Mat<Scalar> one = Mat<Scalar>::Identity(d, d);
  MagicUnitary<Scalar> u(4, static_cast<int>(d));
  u(0, 0) = u(1, 1) = p;
  u(0, 1) = u(1, 0) = one - p;
  u(2, 2) = u(3, 3) = q;
  u(2, 3) = u(3, 2) = one - q;
  return u;
}

/// Orthogonal projection of R^2 onto the line of slope t.
inline MatQ line_projection(const Rational& t) {
  MatQ p(2, 2);
  p << Rational(1), t, t, t * t;
  return p / (1 + t * t);
}

/// Line at `angle` radians, realized exactly through the rational slope
/// closest to tan(angle) with denominator <= max_den.
inline MatQ line_projection_at(double angle, std::int64_t max_den = 1000000) {
  return line_projection(rationalize(std::tan(angle), max_den));
}

/// Exact block model with p on the x-axis and q on the line at `angle`.
inline MagicUnitary<Rational> block_model_at(double angle) {
  return block_model<Rational>(line_projection(Rational(0)), line_projection_at(angle));
}

/// Random rational slope num/den with |num| <= 40, 1 <= den <= 40.
inline Rational random_slope(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-40, 40), den(1, 40);
  return Rational(num(rng)) / Rational(den(rng));
}

/// Block model with two random line projections, from a fixed seed.
inline MagicUnitary<Rational> seeded_block_model(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return block_model<Rational>(line_projection(random_slope(rng)), line_projection(random_slope(rng)));
}

/// Signed permutation: u_ij = ε_j δ_{σ(j), i}.
template <typename Scalar>
HyperoctahedralModel<Scalar> signed_perm_model(const std::vector<int>& sigma, const std::vector<int>& eps) {
  if (eps.size() != sigma.size()) throw ShapeError("signed_perm_model: sign vector length");
  auto u = perm_model<Scalar>(sigma);
  for (int j = 0; j < u.N; ++j) {
    const int e = eps[static_cast<std::size_t>(j)];
    if (e != 1 && e != -1) throw PreconditionError("signed_perm_model: signs must be ±1");
    u(sigma[static_cast<std::size_t>(j)], j)(0, 0) = Scalar(e);
  }
  return u;
}

/// u_ij = w_ij ⊗ (2 r_ij - 1) for a magic unitary w and projections r_ij of a
/// common size. Squares are w_ij ⊗ 1, so the relations reduce to those of w.
template <typename Scalar>
HyperoctahedralModel<Scalar> hn_quantum_model(const MagicUnitary<Scalar>& w, const std::vector<Mat<Scalar>>& r) {
  if (static_cast<int>(r.size()) != w.N * w.N) throw ShapeError("hn_quantum_model: need N*N projections");
  const Eigen::Index e = r.front().rows();
  HyperoctahedralModel<Scalar> u(w.N, w.d * static_cast<int>(e));
  const Mat<Scalar> one = Mat<Scalar>::Identity(e, e);
  for (int i = 0; i < w.N; ++i)
    for (int j = 0; j < w.N; ++j) u(i, j) = kron(w(i, j), Mat<Scalar>(Scalar(2) * r[static_cast<std::size_t>(i * w.N + j)] - one));
  return u;
}

/// Doubled 2N x 2N magic unitary with diagonal blocks (v+u)/2 and
/// off-diagonal blocks (v-u)/2, v_ij = u_ij². This block order is the one
/// under which the counit model doubles to the identity permutation.
template <typename Scalar>
MagicUnitary<Scalar> hn_double(const HyperoctahedralModel<Scalar>& m, double tol = 1e-9) {
  const auto report = validate_hyperoctahedral(m, tol);
  if (!report.pass()) throw ModelError("hn_double: input fails " + report.first_failure()->check);
  const int N = m.N;
  MagicUnitary<Scalar> w(2 * N, m.d);
  for (int i = 0; i < 2 * N; ++i)
    for (int j = 0; j < 2 * N; ++j) {
      const Mat<Scalar>& u = m(i % N, j % N);
      const Mat<Scalar> v = u * u;
      w(i, j) = ((i < N) == (j < N) ? Mat<Scalar>(v + u) : Mat<Scalar>(v - u)) / Scalar(2);
    }
  return w;
}

/// Coefficients of α(e_i) = Σ_j e_j ⊗ q_ji on C^n, evaluated in a model.
template <typename Scalar>
struct CoactionMap {
  int n = 0;
  int d = 0;
  std::vector<Mat<Scalar>> q;  // q[j * n + i]

  CoactionMap() = default;
  CoactionMap(int size, int dim) : n(size), d(dim), q(static_cast<std::size_t>(size * size), Mat<Scalar>::Zero(dim, dim)) {}

  Mat<Scalar>& coeff(int j, int i) { return q[static_cast<std::size_t>(j * n + i)]; }
  const Mat<Scalar>& coeff(int j, int i) const { return q[static_cast<std::size_t>(j * n + i)]; }
};

/// δ_u(e_i) = Σ_j e_j ⊗ u_ji.
template <typename Scalar>
CoactionMap<Scalar> standard_action(const MagicUnitary<Scalar>& u) {
  CoactionMap<Scalar> a(u.N, u.d);
  for (int j = 0; j < u.N; ++j)
    for (int i = 0; i < u.N; ++i) a.coeff(j, i) = u(j, i);
  return a;
}

/// Standard action of H_N^+ on C^{2N}, written out directly: for i, j < N,
///   α(e_i)     = Σ_j e_j ⊗ (v_ji + u_ji)/2 + Σ_j e_{j+N} ⊗ (v_ji - u_ji)/2,
///   α(e_{i+N}) = Σ_j e_j ⊗ (v_ji - u_ji)/2 + Σ_j e_{j+N} ⊗ (v_ji + u_ji)/2.
template <typename Scalar>
CoactionMap<Scalar> hn_standard_action(const HyperoctahedralModel<Scalar>& m, double tol = 1e-9) {
  const auto report = validate_hyperoctahedral(m, tol);
  if (!report.pass()) throw ModelError("hn_standard_action: input fails " + report.first_failure()->check);
  const int N = m.N;
  CoactionMap<Scalar> a(2 * N, m.d);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const Mat<Scalar>& u = m(j, i);
      const Mat<Scalar> v = u * u;
      const Mat<Scalar> plus = (v + u) / Scalar(2), minus = (v - u) / Scalar(2);
      a.coeff(j, i) = plus;
      a.coeff(j + N, i) = minus;
      a.coeff(j, i + N) = minus;
      a.coeff(j + N, i + N) = plus;
    }
  return a;
}

template <typename Scalar>
using CoactionRule = std::function<CoactionMap<Scalar>(const MatrixModel<Scalar>&)>;

/// (α_{m1} ⊗ id) ∘ α_{m2}: coefficient (k, i) is Σ_j q1_kj ⊗ q2_ji.
template <typename Scalar>
CoactionMap<Scalar> compose_coactions(const CoactionMap<Scalar>& a1, const CoactionMap<Scalar>& a2) {
  if (a1.n != a2.n) throw ShapeError("compose_coactions: base dimension differs");
  CoactionMap<Scalar> out(a1.n, a1.d * a2.d);
  for (int k = 0; k < a1.n; ++k)
    for (int i = 0; i < a1.n; ++i)
      for (int j = 0; j < a1.n; ++j) out.coeff(k, i) += kron(a1.coeff(k, j), a2.coeff(j, i));
  return out;
}

/// (a) unital *-homomorphism on the idempotent basis, (b) coassociativity
/// against tensor_model for each supplied pair, (c) the counit model acts as
/// the identity.
template <typename Scalar>
Report validate_coaction(const CoactionRule<Scalar>& rule, const MatrixModel<Scalar>& model,
                         const std::vector<std::pair<MatrixModel<Scalar>, MatrixModel<Scalar>>>& pairs,
                         const MatrixModel<Scalar>& counit, double tol = 1e-9) {
  using M = Mat<Scalar>;
  const CoactionMap<Scalar> a = rule(model);
  if (static_cast<int>(a.q.size()) != a.n * a.n) throw ShapeError("validate_coaction: coefficient count");
  const M one = M::Identity(a.d, a.d);
  detail::Check<Scalar> mult("multiplicative", tol), unit("unital", tol), star("star", tol), coassoc("coassociative", tol),
      cu("counit", tol);
  for (int j = 0; j < a.n; ++j) {
    M s = -one;
    for (int i = 0; i < a.n; ++i) {
      const M& x = a.coeff(j, i);
      star.observe(M(x.adjoint() - x), detail::at(j, i));
      s += x;
      for (int l = 0; l < a.n; ++l) mult.observe(M(x * a.coeff(j, l) - (i == l ? x : M(M::Zero(a.d, a.d)))), detail::at(j, i, l));
    }
    unit.observe(s, "row " + std::to_string(j));
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto lhs = compose_coactions(rule(pairs[p].first), rule(pairs[p].second));
    const auto rhs = rule(tensor_model(pairs[p].first, pairs[p].second));
    for (int k = 0; k < lhs.n; ++k)
      for (int i = 0; i < lhs.n; ++i)
        coassoc.observe(M(lhs.coeff(k, i) - rhs.coeff(k, i)), "pair " + std::to_string(p) + " " + detail::at(k, i));
  }
  const auto e = rule(counit);
  for (int j = 0; j < e.n; ++j)
    for (int i = 0; i < e.n; ++i)
      cu.observe(M(e.coeff(j, i) - (i == j ? M(M::Identity(e.d, e.d)) : M(M::Zero(e.d, e.d)))), detail::at(j, i));
  return {{mult.done(), unit.done(), star.done(), coassoc.done(), cu.done()}};
}

/// Permutation of {0..2N-1} realized by hn_double on a signed permutation.
inline std::vector<int> doubled_permutation(const std::vector<int>& sigma, const std::vector<int>& eps) {
  const int N = static_cast<int>(sigma.size());
  std::vector<int> out(static_cast<std::size_t>(2 * N));
  for (int j = 0; j < N; ++j) {
    const int s = sigma[static_cast<std::size_t>(j)];
    const bool flip = eps[static_cast<std::size_t>(j)] == -1;
    out[static_cast<std::size_t>(j)] = flip ? s + N : s;
    out[static_cast<std::size_t>(j + N)] = flip ? s : s + N;
  }
  return out;
}

/// Exact model converted entrywise to double.
inline MatrixModel<double> to_double(const MatrixModel<Rational>& m) {
  MatrixModel<double> out(m.N, m.d);
  for (std::size_t k = 0; k < m.entries.size(); ++k) out.entries[k] = m.entries[k].unaryExpr([](const Rational& x) { return qsym::to_double(x); });
  return out;
}

}  // namespace qsym

#endif
