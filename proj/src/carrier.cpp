#include "qsym/carrier.hpp"

#include "qsym/errors.hpp"
#include "qsym/linalg.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace qsym {

namespace {

Eigen::Index dim_of(int N, int legs) { return static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(N), legs)); }

void check_family_N(PartitionFamily family, int N) {
  if (family == PartitionFamily::AllNC && N < 4)
    throw PreconditionError("carrier spaces for ALL_NC need N >= 4 (got " + std::to_string(N) + ")");
  if (N < 2) throw PreconditionError("carrier spaces need N >= 2");
}

MatQ transpose(const MatQ& m) { return m.transpose(); }

// Kernel of m; goes through mᵀm when that is the smaller system.
MatQ kernel(const MatQ& m) {
  if (m.rows() > m.cols()) return nullspace(product(transpose(m), m));
  return nullspace(m);
}

Eigen::Index rank_of(const MatQ& m) {
  if (m.rows() > m.cols()) return rank(product(transpose(m), m));
  if (m.cols() > m.rows()) return rank(product(m, transpose(m)));
  return rank(m);
}

// Rows of `prev` (indexed by multi-indices of k-1 legs) whose last index is t.
MatQ rows_ending_in(const MatQ& prev, int N, int t) {
  MatQ out(prev.rows() / N, prev.cols());
  for (Eigen::Index r = 0; r < out.rows(); ++r) out.row(r) = prev.row(r * N + t);
  return out;
}

// x = Σ_{a,t} c_{a,t} b_a ⊗ e_t for coefficient blocks c_t (d x cols).
MatQ assemble(const MatQ& prev, int N, const std::vector<MatQ>& coeff_by_last) {
  const Eigen::Index cols = coeff_by_last.front().cols();
  MatQ out(prev.rows() * N, cols);
  for (int t = 0; t < N; ++t) {
    const MatQ part = product(prev, coeff_by_last[static_cast<std::size_t>(t)]);
    for (Eigen::Index r = 0; r < prev.rows(); ++r) out.row(r * N + t) = part.row(r);
  }
  return out;
}

// Trace over the last two legs of x = Σ c_{a,t} b_a ⊗ e_t, as a matrix in the
// unknowns c (column index t*d + a).
MatQ trace_constraint(const MatQ& prev, int N) {
  const Eigen::Index d = prev.cols();
  MatQ m = MatQ::Zero(prev.rows() / N, d * N);
  for (Eigen::Index s = 0; s < m.rows(); ++s)
    for (int t = 0; t < N; ++t)
      for (Eigen::Index a = 0; a < d; ++a) m(s, t * d + a) = prev(s * N + t, a);
  return m;
}

std::vector<MatQ> split_by_last(const MatQ& coeffs, Eigen::Index d, int N) {
  std::vector<MatQ> out;
  for (int t = 0; t < N; ++t) out.push_back(coeffs.middleRows(t * d, d));
  return out;
}

// Lower partitions k -> l (l < k) other than p' ⊗ |.
std::vector<SetPartition> new_leg_constraints(PartitionFamily family, int k, const Limits& limits) {
  std::vector<SetPartition> out;
  for (int l = 0; l < k; ++l)
    for (auto& p : enumerate_partitions(family, k, l, limits)) {
      bool split_off = false;
      if (l > 0)
        for (const auto& b : p.blocks())
          if (b == std::vector<int>{k, k + l}) split_off = true;
      if (!split_off) out.push_back(std::move(p));
    }
  return out;
}

MatQ stacked_images(const std::vector<SetPartition>& parts, int N, const MatQ& columns) {
  std::vector<MatQ> blocks;
  Eigen::Index rows = 0;
  for (const auto& p : parts) {
    blocks.push_back(apply_partition(p, N, columns));
    rows += blocks.back().rows();
  }
  MatQ out(rows, columns.cols());
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return out;
}

// Coefficients (rows t*d + a) of the next carrier inside H_{k-1} ⊗ C^N, or just
// the constraint matrix when `dimension_only`.
MatQ next_level(PartitionFamily family, int N, int k, const MatQ& prev, const Limits& limits,
                Eigen::Index* dimension_only) {
  const Eigen::Index d = prev.cols();
  switch (family) {
    case PartitionFamily::AllNC: {
      // Fork on the last two legs decouples by the value t of the last index;
      // the singleton on the last leg then reads Σ_t c_t = 0.
      std::vector<MatQ> fork_kernels;
      for (int t = 0; t < N; ++t)
        fork_kernels.push_back(k >= 2 ? kernel(rows_ending_in(prev, N, t)) : MatQ(MatQ::Identity(d, d)));
      Eigen::Index total = 0;
      for (const auto& kt : fork_kernels) total += kt.cols();
      MatQ joined(d, total);
      Eigen::Index at = 0;
      for (const auto& kt : fork_kernels) {
        joined.middleCols(at, kt.cols()) = kt;
        at += kt.cols();
      }
      if (dimension_only) {
        *dimension_only = total - rank_of(joined);
        return {};
      }
      const MatQ y = kernel(joined);
      MatQ coeffs(d * N, y.cols());
      at = 0;
      for (int t = 0; t < N; ++t) {
        const auto& kt = fork_kernels[static_cast<std::size_t>(t)];
        coeffs.middleRows(t * d, d) = product(kt, y.middleRows(at, kt.cols()));
        at += kt.cols();
      }
      return coeffs;
    }
    case PartitionFamily::PairNC: {
      if (k < 2) {
        if (dimension_only) *dimension_only = d * N;
        return MatQ::Identity(d * N, d * N);
      }
      const MatQ m = trace_constraint(prev, N);
      if (dimension_only) {
        *dimension_only = d * N - rank_of(m);
        return {};
      }
      return kernel(m);
    }
    case PartitionFamily::EvenNC: {
      // Columns of H_{k-1} ⊗ C^N in the same (t, a) order as above.
      MatQ candidate = MatQ::Zero(prev.rows() * N, d * N);
      for (Eigen::Index r = 0; r < prev.rows(); ++r)
        for (int t = 0; t < N; ++t)
          for (Eigen::Index a = 0; a < d; ++a) candidate(r * N + t, t * d + a) = prev(r, a);
      const auto parts = new_leg_constraints(family, k, limits);
      if (parts.empty()) {
        if (dimension_only) *dimension_only = d * N;
        return MatQ::Identity(d * N, d * N);
      }
      const MatQ m = stacked_images(parts, N, candidate);
      if (dimension_only) {
        *dimension_only = d * N - rank_of(m);
        return {};
      }
      return kernel(m);
    }
  }
  throw PreconditionError("unknown partition family");
}

}  // namespace

std::vector<MatQ> carrier_bases(PartitionFamily family, int N, int kmax, const Limits& limits) {
  check_family_N(family, N);
  if (kmax < 0) throw PreconditionError("carrier_bases: k must be non-negative");
  require_tensor_dim(N, kmax, limits);
  std::vector<MatQ> out{MatQ::Identity(1, 1)};
  for (int k = 1; k <= kmax; ++k) {
    const MatQ& prev = out.back();
    const MatQ coeffs = next_level(family, N, k, prev, limits, nullptr);
    MatQ basis = assemble(prev, N, split_by_last(coeffs, prev.cols(), N));
    normalize_columns(basis);
    out.push_back(std::move(basis));
  }
  return out;
}

MatQ carrier_basis(PartitionFamily family, int N, int k, const Limits& limits) {
  return carrier_bases(family, N, k, limits).back();
}

Eigen::Index carrier_dimension(PartitionFamily family, int N, int k, const Limits& limits) {
  if (k <= 0) {
    check_family_N(family, N);
    return 1;
  }
  const MatQ prev = carrier_basis(family, N, k - 1, limits);
  Eigen::Index d = 0;
  next_level(family, N, k, prev, limits, &d);
  return d;
}

MatQ carrier_basis_reference(PartitionFamily family, int N, int k, const Limits& limits) {
  check_family_N(family, N);
  require_tensor_dim(N, k, limits);
  const Eigen::Index n = dim_of(N, k);
  std::vector<SetPartition> parts;
  for (int l = 0; l < k; ++l)
    for (auto& p : enumerate_partitions(family, k, l, limits)) parts.push_back(std::move(p));
  if (parts.empty()) return MatQ::Identity(n, n);
  return kernel(stacked_images(parts, N, MatQ::Identity(n, n)));
}

MatQ span_projection(const MatQ& basis) {
  const MatQ bt = basis.transpose();
  return product(product(basis, inverse(product(bt, basis))), bt);
}

TensorOperator carrier_projection(PartitionFamily family, int N, int k, const Limits& limits) {
  require_tensor_dim(N, 2 * k, limits);
  return {N, k, k, span_projection(carrier_basis(family, N, k, limits))};
}

int total_legs(const SpaceSpec& spec) {
  int n = 0;
  for (const auto& f : spec) n += f.legs;
  return n;
}

std::string to_string(const SpaceSpec& spec) {
  if (spec.empty()) return "C";
  std::ostringstream os;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (i) os << "⊗";
    if (spec[i].kind == Factor::Kind::Carrier)
      os << "H" << spec[i].legs;
    else
      os << "V^" << spec[i].legs;
  }
  return os.str();
}

namespace {

struct SpaceData {
  MatQ basis, gram, gram_inverse;
};

SpaceData space_data(PartitionFamily family, int N, const SpaceSpec& spec, const Limits& limits) {
  require_tensor_dim(N, total_legs(spec), limits);
  int kmax = 0;
  for (const auto& f : spec) {
    if (f.legs < 0) throw PreconditionError("negative leg count in space spec");
    if (f.kind == Factor::Kind::Carrier) kmax = std::max(kmax, f.legs);
  }
  const auto bases = carrier_bases(family, N, kmax, limits);
  SpaceData out{MatQ::Identity(1, 1), MatQ::Identity(1, 1), MatQ::Identity(1, 1)};
  for (const auto& f : spec) {
    MatQ b, g, gi;
    if (f.kind == Factor::Kind::Carrier) {
      b = bases[static_cast<std::size_t>(f.legs)];
      g = product(transpose(b), b);
      gi = inverse(g);
    } else {
      const Eigen::Index n = dim_of(N, f.legs);
      b = g = gi = MatQ::Identity(n, n);
    }
    out.basis = kron(out.basis, b);
    out.gram = kron(out.gram, g);
    out.gram_inverse = kron(out.gram_inverse, gi);
  }
  return out;
}

struct LegInfo {
  int factor = -1;
  int position = 0;
  bool carrier = false;
};

std::vector<LegInfo> leg_info(const SpaceSpec& spec) {
  std::vector<LegInfo> out;
  for (std::size_t f = 0; f < spec.size(); ++f)
    for (int i = 0; i < spec[f].legs; ++i)
      out.push_back({static_cast<int>(f), i, spec[f].kind == Factor::Kind::Carrier && spec[f].legs > 0});
  return out;
}

}  // namespace

MatQ space_basis(PartitionFamily family, int N, const SpaceSpec& spec, const Limits& limits) {
  return space_data(family, N, spec, limits).basis;
}

bool compression_vanishes(PartitionFamily family, const SetPartition& p, const SpaceSpec& from,
                          const SpaceSpec& to) {
  const auto top = leg_info(from);
  const auto bottom = leg_info(to);
  if (static_cast<int>(top.size()) != p.upper() || static_cast<int>(bottom.size()) != p.lower())
    throw ShapeError("compression_vanishes: partition shape does not match the specs");
  auto info = [&](int x) -> std::pair<int, LegInfo> {
    if (x <= p.upper()) return {0, top[static_cast<std::size_t>(x - 1)]};
    return {1, bottom[static_cast<std::size_t>(x - p.upper() - 1)]};
  };
  for (const auto& b : p.blocks()) {
    if (family == PartitionFamily::AllNC && b.size() == 1 && info(b[0]).second.carrier) return true;
    if (family != PartitionFamily::AllNC && b.size() != 2) continue;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        const auto [ri, li] = info(b[i]);
        const auto [rj, lj] = info(b[j]);
        if (ri == rj && li.carrier && li.factor == lj.factor && std::abs(li.position - lj.position) == 1)
          return true;
      }
  }
  return false;
}

TensorOperator MorphismSpace::realize(std::size_t i) const {
  const MatQ m = product(product(to_basis, coords.at(i)), product(from_gram_inverse, transpose(from_basis)));
  return {N, total_legs(from), total_legs(to), m};
}

MorphismSpace morphism_space(PartitionFamily family, int N, const SpaceSpec& from, const SpaceSpec& to,
                             const Limits& limits) {
  check_family_N(family, N);
  const auto f = space_data(family, N, from, limits);
  const auto t = space_data(family, N, to, limits);
  MorphismSpace out;
  out.family = family;
  out.N = N;
  out.from = from;
  out.to = to;
  out.from_basis = f.basis;
  out.to_basis = t.basis;
  out.from_gram = f.gram;
  out.to_gram = t.gram;
  out.from_gram_inverse = f.gram_inverse;
  out.to_gram_inverse = t.gram_inverse;

  const int kf = total_legs(from), kt = total_legs(to);
  const Eigen::Index df = f.basis.cols(), dt = t.basis.cols();
  if (df == 0 || dt == 0) return out;
  const MatQ to_t = transpose(t.basis);
  RowEchelon span(dt * df);
  for (const auto& p : enumerate_partitions(family, kf, kt, limits)) {
    if (compression_vanishes(family, p, from, to)) {
      ++out.skipped;
      continue;
    }
    ++out.evaluated;
    // B_toᵀ T_p B_from, pushing T_p onto whichever side is cheaper.
    const double nb = std::pow(static_cast<double>(N), static_cast<double>(p.block_count()));
    const double cost_from = nb * df + static_cast<double>(dt) * dim_of(N, kt) * df;
    const double cost_to = nb * dt + static_cast<double>(df) * dim_of(N, kf) * dt;
    MatQ c;
    if (cost_from <= cost_to)
      c = product(to_t, apply_partition(p, N, f.basis));
    else
      c = product(transpose(apply_partition(p.involution(), N, t.basis)), f.basis);
    if (!span.add(Eigen::Map<const VecQ>(c.data(), c.size()))) continue;
    out.coords.push_back(product(t.gram_inverse, c));
  }
  return out;
}

std::string_view to_string(Side s) { return s == Side::Left ? "LEFT" : "RIGHT"; }

TensorOperator FusionEmbedding::unnormalized() const { return space.realize(0); }

VecQ FusionEmbedding::apply(const VecQ& v) const {
  const MatQ x = product(space.from_gram_inverse, product(transpose(space.from_basis), v));
  return product(space.to_basis, product(coords, x));
}

Eigen::Index FusionEmbedding::rank() const { return qsym::rank(coords); }

FusionEmbedding fusion_embedding(int N, int k, int n, Side side, const Limits& limits) {
  if (N < 4) throw PreconditionError("fusion_embedding needs N >= 4");
  if (k < 1 || n < 0) throw PreconditionError("fusion_embedding needs k >= 1 and n >= 0");
  const SpaceSpec from = side == Side::Left ? SpaceSpec{Factor::carrier(1), Factor::carrier(k)}
                                            : SpaceSpec{Factor::carrier(k), Factor::carrier(1)};
  FusionEmbedding e;
  e.N = N;
  e.k = k;
  e.n = n;
  e.side = side;
  e.space = morphism_space(PartitionFamily::AllNC, N, from, {Factor::carrier(n)}, limits);
  if (e.space.dim() == 0)
    throw PreconditionError("fusion_embedding: H_" + std::to_string(n) + " does not occur in " + to_string(from));
  if (e.space.dim() != 1)
    throw ModelError("fusion_embedding: morphism space has dimension " + std::to_string(e.space.dim()));
  e.coords = e.space.coords.front();
  // T T* = scale · P_n  <=>  C G_s⁻¹ Cᵀ G_n = scale · I.
  const MatQ m = product(product(product(e.coords, e.space.from_gram_inverse), transpose(e.coords)), e.space.to_gram);
  e.scale = m(0, 0);
  if (!(m == MatQ(e.scale * MatQ::Identity(m.rows(), m.cols()))) || e.scale <= 0)
    throw ModelError("fusion_embedding: T T* is not a positive multiple of the carrier projection");
  return e;
}

ObstructionReport commutativity_obstruction(int N, int k, const Limits& limits) {
  if (N < 4) throw PreconditionError("commutativity_obstruction needs N >= 4");
  if (k < 2) throw PreconditionError("commutativity_obstruction needs k >= 2");
  ObstructionReport r;
  r.N = N;
  r.k = k;
  const auto bases = carrier_bases(PartitionFamily::AllNC, N, k, limits);
  auto project = [&](int legs, const VecQ& v) -> VecQ {
    const MatQ& b = bases[static_cast<std::size_t>(legs)];
    const MatQ bt = transpose(b);
    return product(b, product(inverse(product(bt, b)), product(bt, v)));
  };
  std::vector<int> alt(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) alt[static_cast<std::size_t>(t)] = t % 2 == 0 ? 1 : 2;
  const std::vector<int> alt_tail(alt.begin() + 1, alt.end());
  const VecQ eta1 = basis_tensor(N, {1}) - basis_tensor(N, {2});
  const VecQ eta2 = project(k, basis_tensor(N, alt));
  const VecQ eta2p = project(k - 1, basis_tensor(N, alt_tail));
  r.eta2_norm_sq = eta2.squaredNorm();
  r.eta2_prime_norm_sq = eta2p.squaredNorm();
  if (r.eta2_norm_sq == 0 || r.eta2_prime_norm_sq == 0) {
    r.degenerate = true;
    r.degenerate_reason = r.eta2_norm_sq == 0 ? "projection of the alternating vector onto H_k vanishes"
                                              : "projection of the shortened alternating vector vanishes";
  }
  const Eigen::Index d1 = bases[1].cols(), dk = bases[static_cast<std::size_t>(k)].cols();
  for (int n : {k - 1, k + 1}) {
    const auto left = fusion_embedding(N, k, n, Side::Left, limits);
    const auto right = fusion_embedding(N, k, n, Side::Right, limits);
    ObstructionEntry e;
    e.n = n;
    e.morphism_dim = left.space.dim();
    e.target_dim = left.coords.rows();
    e.left_scale = left.scale;
    e.right_scale = right.scale;
    // Right coordinates re-indexed from (b, a) on H_k ⊗ H_1 to (a, b) on H_1 ⊗ H_k.
    MatQ right_flipped(right.coords.rows(), right.coords.cols());
    for (Eigen::Index a = 0; a < d1; ++a)
      for (Eigen::Index b = 0; b < dk; ++b) right_flipped.col(a * dk + b) = right.coords.col(b * d1 + a);
    const MatQ inner = product(product(left.space.from_gram_inverse, transpose(left.coords)),
                               product(left.space.to_gram, right_flipped));
    const Rational ip = inner.trace();
    e.overlap_sq = ip * ip / (left.scale * right.scale);
    const Rational dn = Rational(e.target_dim);
    e.certificate_positive = e.overlap_sq < dn * dn;
    const double sq = 2.0 * to_double(dn) - 2.0 * std::sqrt(to_double(e.overlap_sq));
    e.certificate = std::sqrt(std::max(0.0, sq));
    if (n == k - 1 && !r.degenerate) {
      e.has_pairings = true;
      e.left_pairing = left.apply(kron(eta1, eta2)).dot(eta2p);
      e.right_pairing = right.apply(kron(eta2, eta1)).dot(eta2p);
      r.pairing_pattern = e.left_pairing != 0 && e.right_pairing == 0;
    }
    if (n == k - 1) {
      const SetPartition cap(2, 0, {{1, 2}});
      const VecQ raw2 = basis_tensor(N, alt);
      const VecQ raw2p = basis_tensor(N, alt_tail);
      const auto lmap = tensor(cap, SetPartition::identity(k - 1));
      const auto rmap = tensor(SetPartition::identity(k - 1), cap);
      e.raw_left_pairing = apply_partition(lmap, N, kron(eta1, raw2)).col(0).dot(raw2p);
      e.raw_right_pairing = apply_partition(rmap, N, kron(raw2, eta1)).col(0).dot(raw2p);
    }
    r.entries.push_back(std::move(e));
  }
  return r;
}

Eigen::Index intertwiner_rank(PartitionFamily family, int N, int k, RankRoute route, const Limits& limits) {
  const auto parts = enumerate_partitions(family, 0, k, limits);
  if (route == RankRoute::Direct) {
    require_tensor_dim(N, k, limits);
    RowEchelon span(dim_of(N, k));
    const MatQ one = MatQ::Ones(1, 1);
    for (const auto& p : parts) span.add(apply_partition(p, N, one).col(0));
    return span.rank();
  }
  // <T_p, T_q> = N^(number of blocks of the join of p and q).
  const auto n = static_cast<Eigen::Index>(parts.size());
  MatQ gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const auto li = parts[static_cast<std::size_t>(i)].labels();
      const auto lj = parts[static_cast<std::size_t>(j)].labels();
      std::vector<int> parent(static_cast<std::size_t>(k));
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
      };
      for (int x = 0; x < k; ++x)
        for (int y = x + 1; y < k; ++y)
          if (li[static_cast<std::size_t>(x)] == li[static_cast<std::size_t>(y)] ||
              lj[static_cast<std::size_t>(x)] == lj[static_cast<std::size_t>(y)])
            parent[static_cast<std::size_t>(find(y))] = find(x);
      int comps = 0;
      for (int x = 0; x < k; ++x)
        if (find(x) == x) ++comps;
      gram(i, j) = gram(j, i) = Rational(Integer(ipow(static_cast<std::uint64_t>(N), comps)));
    }
  return rank(gram);
}

}  // namespace qsym
