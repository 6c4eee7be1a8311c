#include "generators.hpp"

#include "qsym/carrier.hpp"
#include "qsym/errors.hpp"
#include "qsym/linalg.hpp"

#include <gtest/gtest.h>

using namespace qsym;

namespace {

// d_{k+1} = a·d_k - d_{k-1} with d_0 = 1, d_1 = b.
Eigen::Index recursion(int a, int b, int k) {
  Eigen::Index prev = 1, cur = b;
  if (k == 0) return 1;
  for (int i = 1; i < k; ++i) {
    const Eigen::Index next = a * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}
Eigen::Index sn_dim(int N, int k) { return recursion(N - 2, N - 1, k); }
Eigen::Index on_dim(int N, int k) { return recursion(N, N, k); }

bool same_span(const MatQ& a, const MatQ& b) {
  if (a.rows() != b.rows()) return false;
  MatQ both(a.rows(), a.cols() + b.cols());
  both << a, b;
  const auto r = rank(both);
  return r == rank(a) && r == rank(b);
}

// Nonzero c with a = c·b, if one exists.
bool proportional(const MatQ& a, const MatQ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  Rational c = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (b.data()[i] == 0) {
      if (a.data()[i] != 0) return false;
      continue;
    }
    const Rational r = a.data()[i] / b.data()[i];
    if (c == 0) c = r;
    if (r != c) return false;
  }
  return c != 0;
}

const SetPartition kCap(2, 0, {{1, 2}});

}  // namespace

TEST(Carrier, StandardRepresentationIsXiPerp) {
  const auto p = carrier_projection(PartitionFamily::AllNC, 4, 1);
  const MatQ expected = MatQ::Identity(4, 4) - MatQ::Constant(4, 4, Rational(1, 4));
  EXPECT_EQ(p.matrix, expected);
  EXPECT_EQ(rank(p.matrix), 3);
}

TEST(Carrier, SecondLevelAgainstHandConstraints) {
  // x in C^4 ⊗ C^4 with zero row sums, zero column sums and zero diagonal.
  MatQ c = MatQ::Zero(12, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      c(i, 4 * i + j) = 1;
      c(4 + j, 4 * i + j) = 1;
    }
  for (int i = 0; i < 4; ++i) c(8 + i, 5 * i) = 1;
  const MatQ oracle = nullspace(c);
  EXPECT_EQ(oracle.cols(), 5);
  EXPECT_TRUE(same_span(oracle, carrier_basis(PartitionFamily::AllNC, 4, 2)));
  EXPECT_EQ(rank(carrier_projection(PartitionFamily::AllNC, 4, 2).matrix), 5);
  EXPECT_EQ(rank(carrier_projection(PartitionFamily::PairNC, 4, 2).matrix), 15);
}

TEST(Carrier, RecursionMatchesDirectKernel) {
  for (int N : {4, 5})
    for (int k = 0; k <= 3; ++k)
      EXPECT_TRUE(same_span(carrier_basis(PartitionFamily::AllNC, N, k),
                            carrier_basis_reference(PartitionFamily::AllNC, N, k)))
          << "ALL_NC N=" << N << " k=" << k;
  for (int N : {2, 3, 4})
    for (int k = 0; k <= 3; ++k) {
      EXPECT_TRUE(same_span(carrier_basis(PartitionFamily::PairNC, N, k),
                            carrier_basis_reference(PartitionFamily::PairNC, N, k)))
          << "PAIR_NC N=" << N << " k=" << k;
      EXPECT_TRUE(same_span(carrier_basis(PartitionFamily::EvenNC, N, k),
                            carrier_basis_reference(PartitionFamily::EvenNC, N, k)))
          << "EVEN_NC N=" << N << " k=" << k;
    }
}

TEST(Carrier, NeedsEnoughPoints) {
  EXPECT_THROW(carrier_basis(PartitionFamily::AllNC, 3, 1), PreconditionError);
  EXPECT_THROW(carrier_basis(PartitionFamily::PairNC, 1, 1), PreconditionError);
  Limits tight;
  tight.max_tensor_dim = 100;
  EXPECT_THROW(carrier_projection(PartitionFamily::AllNC, 4, 2, tight), SizeLimitError);
}

TEST(Property, ProjectionIdempotentSelfAdjoint) {
  for (auto family : {PartitionFamily::AllNC, PartitionFamily::PairNC, PartitionFamily::EvenNC})
    for (int N : {4, 5})
      for (int k = 0; N * k <= 12 && k <= 3; ++k) {
        const auto p = carrier_projection(family, N, k);
        EXPECT_EQ(product(p.matrix, p.matrix), p.matrix);
        EXPECT_EQ(MatQ(p.matrix.transpose()), p.matrix);
      }
}

TEST(Property, CarrierRankFollowsRecursion) {
  for (int N : {4, 5}) {
    const auto bases = carrier_bases(PartitionFamily::AllNC, N, 5);
    for (int k = 0; k <= 5; ++k) EXPECT_EQ(bases[static_cast<std::size_t>(k)].cols(), sn_dim(N, k)) << N << "," << k;
  }
  for (int N : {3, 4, 5})
    for (int k = 0; k <= 5; ++k)
      EXPECT_EQ(carrier_dimension(PartitionFamily::PairNC, N, k), on_dim(N, k)) << N << "," << k;
}

TEST(Intertwiners, FrozenRanks) {
  const std::vector<Eigen::Index> catalan{1, 1, 2, 5, 14, 42, 132};
  for (int k = 0; k <= 5; ++k)
    EXPECT_EQ(intertwiner_rank(PartitionFamily::AllNC, 4, k, RankRoute::Direct), catalan[static_cast<std::size_t>(k)]);
  EXPECT_EQ(intertwiner_rank(PartitionFamily::AllNC, 4, 6, RankRoute::Gram), 132);
  // Below N = 4 the vectors become dependent: at N = 2 only 2^k can survive.
  EXPECT_LT(intertwiner_rank(PartitionFamily::AllNC, 2, 3, RankRoute::Direct), 5);
}

TEST(Intertwiners, GramRouteAgreesWithDirect) {
  for (auto family : {PartitionFamily::AllNC, PartitionFamily::PairNC, PartitionFamily::EvenNC})
    for (int N : {2, 3, 4})
      for (int k = 0; k <= 4; ++k)
        EXPECT_EQ(intertwiner_rank(family, N, k, RankRoute::Gram), intertwiner_rank(family, N, k, RankRoute::Direct));
}

TEST(Morphisms, Examples) {
  const auto f = PartitionFamily::AllNC;
  EXPECT_EQ(morphism_space(f, 4, {Factor::carrier(1)}, {Factor::carrier(1), Factor::carrier(2)}).dim(), 1);
  EXPECT_EQ(morphism_space(f, 4, {}, {Factor::full(3)}).dim(), 5);
  EXPECT_EQ(morphism_space(f, 4, {Factor::carrier(0)}, {Factor::carrier(1)}).dim(), 0);
}

TEST(Morphisms, SkippedPartitionsReallyVanish) {
  const auto fam = PartitionFamily::AllNC;
  const SpaceSpec from{Factor::carrier(1), Factor::carrier(2)};
  const SpaceSpec to{Factor::carrier(2)};
  const MatQ bf = space_basis(fam, 4, from);
  const MatQ bt = space_basis(fam, 4, to);
  int skipped = 0;
  for (const auto& p : enumerate_partitions(fam, 3, 2)) {
    if (!compression_vanishes(fam, p, from, to)) continue;
    ++skipped;
    EXPECT_TRUE(is_zero_matrix(product(MatQ(bt.transpose()), product(t_map(p, 4).matrix, bf)))) << p.to_string();
  }
  EXPECT_GT(skipped, 0);
  for (auto family : {PartitionFamily::PairNC, PartitionFamily::EvenNC}) {
    const MatQ b2 = space_basis(family, 3, {Factor::carrier(2), Factor::full(1)});
    for (const auto& p : enumerate_partitions(family, 3, 1))
      if (compression_vanishes(family, p, {Factor::carrier(2), Factor::full(1)}, {Factor::full(1)}))
        EXPECT_TRUE(is_zero_matrix(product(t_map(p, 3).matrix, b2))) << p.to_string();
  }
}

TEST(Property, FusionMultiplicityOne) {
  for (int N : {4, 5})
    for (int k = 1; k <= 4; ++k)
      for (int n = std::max(0, k - 2); n <= k + 2; ++n) {
        if (N == 5 && n + k + 1 > 8) continue;
        const auto m = morphism_space(PartitionFamily::AllNC, N, {Factor::carrier(n)},
                                      {Factor::carrier(1), Factor::carrier(k)});
        const Eigen::Index expected = (n >= k - 1 && n <= k + 1) ? 1 : 0;
        EXPECT_EQ(m.dim(), expected) << "N=" << N << " k=" << k << " n=" << n;
      }
}

TEST(Embedding, IsCoisometryUpToScale) {
  const auto e = fusion_embedding(4, 2, 1, Side::Left);
  const auto t = e.unnormalized();
  const MatQ ttstar = product(t.matrix, MatQ(t.matrix.transpose()));
  const auto p1 = carrier_projection(PartitionFamily::AllNC, 4, 1);
  EXPECT_EQ(ttstar, MatQ(e.scale * p1.matrix));
  EXPECT_GT(e.scale, 0);
}

TEST(Embedding, RankIsTargetDimension) {
  EXPECT_EQ(fusion_embedding(4, 2, 3, Side::Left).rank(), 7);
  EXPECT_EQ(fusion_embedding(4, 2, 3, Side::Right).rank(), 7);
}

TEST(Embedding, KOneNZeroIsTheCap) {
  const auto e = fusion_embedding(4, 1, 0, Side::Left);
  const MatQ restricted = product(t_map(kCap, 4).matrix,
                                  span_projection(space_basis(PartitionFamily::AllNC, 4,
                                                              {Factor::carrier(1), Factor::carrier(1)})));
  EXPECT_TRUE(proportional(e.unnormalized().matrix, restricted));
}

TEST(Embedding, LowerNeighbourIsCapTensorProjection) {
  for (int k : {2, 3}) {
    const int N = 4;
    const auto e = fusion_embedding(N, k, k - 1, Side::Left);
    const MatQ source = span_projection(space_basis(PartitionFamily::AllNC, N, {Factor::carrier(1), Factor::carrier(k)}));
    const MatQ explicit_map =
        product(kron(t_map(kCap, N).matrix, carrier_projection(PartitionFamily::AllNC, N, k - 1).matrix), source);
    EXPECT_TRUE(proportional(e.unnormalized().matrix, explicit_map)) << "k=" << k;
  }
}

TEST(Embedding, OutsideFusionRangeIsAnError) {
  EXPECT_THROW(fusion_embedding(4, 2, 4, Side::Left), PreconditionError);
  EXPECT_THROW(fusion_embedding(3, 2, 1, Side::Left), PreconditionError);
}

TEST(Obstruction, CertificatesPositive) {
  for (int N : {4, 5})
    for (int k : {2, 3}) {
      const auto r = commutativity_obstruction(N, k);
      EXPECT_FALSE(r.degenerate);
      ASSERT_EQ(r.entries.size(), 2u);
      for (const auto& e : r.entries) {
        EXPECT_EQ(e.morphism_dim, 1);
        EXPECT_TRUE(e.certificate_positive) << "N=" << N << " k=" << k << " n=" << e.n;
        EXPECT_GT(e.certificate, 0.0);
        EXPECT_LT(e.overlap_sq, Rational(e.target_dim * e.target_dim));
      }
    }
}

TEST(Obstruction, DisplayedPairingsOnRawVectors) {
  for (auto [N, k] : std::vector<std::pair<int, int>>{{4, 2}, {4, 3}, {4, 4}, {5, 2}, {5, 3}}) {
    const auto r = commutativity_obstruction(N, k);
    const auto& e = r.entries.front();
    EXPECT_EQ(e.n, k - 1);
    EXPECT_EQ(e.raw_left_pairing, Rational(1));
    EXPECT_EQ(e.raw_right_pairing, Rational(0));
  }
}

// Zero/nonzero status of the projected pairings against the explicit maps
// (cap ⊗ P_{k-1}) and (P_{k-1} ⊗ cap), which span the same lines.
TEST(Obstruction, ProjectedPairingsMatchExplicitMaps) {
  for (int k : {2, 3}) {
    const int N = 4;
    const auto r = commutativity_obstruction(N, k);
    const auto& e = r.entries.front();
    const MatQ pk = carrier_projection(PartitionFamily::AllNC, N, k).matrix;
    const MatQ pk1 = carrier_projection(PartitionFamily::AllNC, N, k - 1).matrix;
    std::vector<int> alt;
    for (int t = 0; t < k; ++t) alt.push_back(t % 2 ? 2 : 1);
    const VecQ eta1 = basis_tensor(N, {1}) - basis_tensor(N, {2});
    const VecQ eta2 = product(pk, basis_tensor(N, alt));
    const VecQ eta2p = product(pk1, basis_tensor(N, std::vector<int>(alt.begin() + 1, alt.end())));
    const MatQ cap = t_map(kCap, N).matrix;
    const Rational left = product(kron(cap, pk1), kron(eta1, eta2)).col(0).dot(eta2p);
    const Rational right = product(kron(pk1, cap), kron(eta2, eta1)).col(0).dot(eta2p);
    EXPECT_EQ(left == 0, e.left_pairing == 0);
    EXPECT_EQ(right == 0, e.right_pairing == 0);
    EXPECT_EQ(r.pairing_pattern, left != 0 && right == 0);
  }
}
