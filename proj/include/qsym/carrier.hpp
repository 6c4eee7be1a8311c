#ifndef QSYM_CARRIER_HPP
#define QSYM_CARRIER_HPP

#include "qsym/limits.hpp"
#include "qsym/partition.hpp"
#include "qsym/rational.hpp"
#include "qsym/tensor_operator.hpp"

#include <string>
#include <vector>

namespace qsym {

/// Integer column basis (N^k x d_k) of the carrier space H_k: the common
/// kernel of T_p over all family partitions p: k -> l with l < k.
///
/// Built recursively inside H_{k-1} ⊗ C^N, only imposing the constraints
/// that touch the new leg.
MatQ carrier_basis(PartitionFamily family, int N, int k, const Limits& limits = Limits::defaults());

/// H_0 .. H_kmax in one pass.
std::vector<MatQ> carrier_bases(PartitionFamily family, int N, int kmax,
                                const Limits& limits = Limits::defaults());

/// dim H_k. For k >= 1 this needs only H_{k-1} and the rank of the new
/// constraints, so it reaches one level further than carrier_basis.
Eigen::Index carrier_dimension(PartitionFamily family, int N, int k,
                               const Limits& limits = Limits::defaults());

/// Same space computed directly as the kernel of every lower T_p. Slow;
/// used as an independent reference for small k.
MatQ carrier_basis_reference(PartitionFamily family, int N, int k,
                             const Limits& limits = Limits::defaults());

/// Orthogonal projection onto H_k. Materialized only under max_tensor_dim
/// (applied to N^(2k)).
TensorOperator carrier_projection(PartitionFamily family, int N, int k,
                                  const Limits& limits = Limits::defaults());

/// Orthogonal projection onto the column span of `basis`.
MatQ span_projection(const MatQ& basis);

/// One tensor factor of a source or target space: H_legs, or the full
/// (C^N)^{⊗legs}.
struct Factor {
  enum class Kind { Carrier, Full };
  Kind kind = Kind::Carrier;
  int legs = 0;

  static Factor carrier(int legs) { return {Kind::Carrier, legs}; }
  static Factor full(int legs) { return {Kind::Full, legs}; }
};
using SpaceSpec = std::vector<Factor>;

int total_legs(const SpaceSpec& spec);
std::string to_string(const SpaceSpec& spec);

/// Column basis of a space spec: Kronecker product of the factor bases.
MatQ space_basis(PartitionFamily family, int N, const SpaceSpec& spec,
                 const Limits& limits = Limits::defaults());

/// Span of the compressions P_to T_p |_from.
///
/// Elements are stored as coordinate matrices C (dim_to x dim_from) with
/// respect to the bases: the operator is  to_basis · C · from_gram⁻¹ · from_basisᵀ.
struct MorphismSpace {
  PartitionFamily family{};
  int N = 0;
  SpaceSpec from, to;
  MatQ from_basis, to_basis;
  MatQ from_gram, to_gram;
  MatQ from_gram_inverse, to_gram_inverse;
  std::vector<MatQ> coords;
  /// Partitions whose compression vanishes for structural reasons; skipped.
  std::size_t skipped = 0;
  std::size_t evaluated = 0;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(coords.size()); }
  /// Ambient operator of the i-th basis element.
  TensorOperator realize(std::size_t i) const;
};

MorphismSpace morphism_space(PartitionFamily family, int N, const SpaceSpec& from, const SpaceSpec& to,
                             const Limits& limits = Limits::defaults());

/// True when p's compression between the two specs is zero for a structural
/// reason (singleton or merged neighbours on a carrier leg, or a cap on two
/// adjacent legs of one carrier factor).
bool compression_vanishes(PartitionFamily family, const SetPartition& p, const SpaceSpec& from,
                          const SpaceSpec& to);

enum class Side { Left, Right };
std::string_view to_string(Side s);

/// The map H_1 ⊗ H_k -> H_n (Left) or H_k ⊗ H_1 -> H_n (Right) spanning the
/// one-dimensional morphism space, stored unnormalized as T with
/// T T* = scale · P_{H_n}. The coisometry is T / sqrt(scale).
struct FusionEmbedding {
  int N = 0, k = 0, n = 0;
  Side side = Side::Left;
  MorphismSpace space;
  MatQ coords;
  Rational scale;

  TensorOperator unnormalized() const;
  /// T applied to an ambient vector of the source.
  VecQ apply(const VecQ& v) const;
  Eigen::Index rank() const;
};

FusionEmbedding fusion_embedding(int N, int k, int n, Side side, const Limits& limits = Limits::defaults());

struct ObstructionEntry {
  int n = 0;
  Eigen::Index morphism_dim = 0;
  Eigen::Index target_dim = 0;
  /// <T_L(η1⊗η2), η2'> and <T_R(η2⊗η1), η2'> for the unnormalized maps; the
  /// coisometry values are these divided by sqrt(scale). Only for n = k-1.
  bool has_pairings = false;
  Rational left_pairing, right_pairing;
  Rational left_scale, right_scale;
  /// The same two pairings through the explicit maps (cap ⊗ id) and
  /// (id ⊗ cap) on the unprojected alternating vectors.
  Rational raw_left_pairing, raw_right_pairing;
  /// |<A, B∘Flip>|² for the coisometries A (Left) and B (Right).
  Rational overlap_sq;
  /// min over |λ| = 1 of ||A - λ B∘Flip||, i.e. sqrt(2 d_n - 2 sqrt(overlap_sq)).
  /// Positivity is decided exactly: overlap_sq < d_n².
  bool certificate_positive = false;
  double certificate = 0.0;
};

struct ObstructionReport {
  int N = 0, k = 0;
  bool degenerate = false;
  std::string degenerate_reason;
  /// Squared norms of the projected test vectors.
  Rational eta2_norm_sq, eta2_prime_norm_sq;
  std::vector<ObstructionEntry> entries;
  /// LEFT pairing nonzero and RIGHT pairing zero at n = k-1.
  bool pairing_pattern = false;
};

ObstructionReport commutativity_obstruction(int N, int k, const Limits& limits = Limits::defaults());

/// Rank of span{T_p : p in family(0, k)}.
enum class RankRoute { Direct, Gram };
Eigen::Index intertwiner_rank(PartitionFamily family, int N, int k, RankRoute route,
                              const Limits& limits = Limits::defaults());

}  // namespace qsym

#endif
