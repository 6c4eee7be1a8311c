#include "generators.hpp"

#include "qsym/errors.hpp"
#include "qsym/linalg.hpp"
#include "qsym/partition.hpp"
#include "qsym/tensor_operator.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace qsym;
using qsym::testing::Gen;

namespace {

// Every set partition of n points as restricted growth strings.
std::vector<std::vector<int>> all_set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (int b = 0; b <= used; ++b) {
      a[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (n == 0)
    out.emplace_back();
  else
    rec(0, 0);
  return out;
}

// Non-crossing iff blocks can be peeled off one at a time, each occupying a
// run of consecutive positions among the points still present.
bool peelable(const SetPartition& p) {
  std::vector<int> order(static_cast<std::size_t>(p.points()));
  const auto lab = p.labels();
  for (int x = 1; x <= p.points(); ++x)
    order[static_cast<std::size_t>(cyclic_position(p, x))] = lab[static_cast<std::size_t>(x - 1)];
  while (!order.empty()) {
    bool removed = false;
    for (std::size_t b = 0; b < p.block_count() && !removed; ++b) {
      const int blk = static_cast<int>(b);
      std::vector<std::size_t> at;
      for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] == blk) at.push_back(i);
      if (at.empty()) continue;
      // A run in cyclic order: at most one gap between consecutive members.
      int gaps = 0;
      for (std::size_t i = 0; i < at.size(); ++i) {
        const std::size_t next = at[(i + 1) % at.size()];
        const std::size_t step = (next + order.size() - at[i]) % order.size();
        if (at.size() > 1 && step != 1) ++gaps;
      }
      if (gaps <= 1) {
        std::vector<int> rest;
        for (int v : order)
          if (v != blk) rest.push_back(v);
        order = rest;
        removed = true;
      }
    }
    if (!removed) return false;
  }
  return true;
}

std::size_t brute_force_count(PartitionFamily family, int upper, int lower) {
  std::size_t count = 0;
  for (const auto& lab : all_set_partitions(upper + lower)) {
    const auto p = SetPartition::from_labels(upper, lower, lab);
    if (!peelable(p)) continue;
    bool ok = true;
    for (const auto& b : p.blocks()) {
      if (family == PartitionFamily::PairNC && b.size() != 2) ok = false;
      if (family == PartitionFamily::EvenNC && b.size() % 2) ok = false;
    }
    if (ok) ++count;
  }
  return count;
}

const SetPartition kCap(2, 0, {{1, 2}});
const SetPartition kCup(0, 2, {{1, 2}});

}  // namespace

TEST(SetPartition, CanonicalBlocks) {
  const SetPartition p(2, 2, {{4, 1}, {3}, {2}});
  EXPECT_EQ(p.blocks(), (std::vector<std::vector<int>>{{1, 4}, {2}, {3}}));
  EXPECT_EQ(p, SetPartition(2, 2, {{2}, {3}, {1, 4}}));
}

TEST(SetPartition, RejectsBadBlocks) {
  EXPECT_THROW(SetPartition(1, 1, {{1}}), PreconditionError);
  EXPECT_THROW(SetPartition(1, 1, {{1, 2}, {2}}), PreconditionError);
  EXPECT_THROW(SetPartition(1, 1, {{1, 3}}), PreconditionError);
  EXPECT_THROW(SetPartition(1, 0, {{1}, {}}), PreconditionError);
}

TEST(SetPartition, CyclicOrderRunsBackAlongBottom) {
  const SetPartition p(2, 3, {{1, 2, 3, 4, 5}});
  EXPECT_EQ(cyclic_position(p, 1), 0);
  EXPECT_EQ(cyclic_position(p, 2), 1);
  EXPECT_EQ(cyclic_position(p, 5), 2);
  EXPECT_EQ(cyclic_position(p, 3), 4);
}

TEST(SetPartition, CrossingDetection) {
  // u1-l2 and u2-l1 cross; u1-l1 and u2-l2 do not.
  EXPECT_FALSE(SetPartition(2, 2, {{1, 4}, {2, 3}}).is_noncrossing());
  EXPECT_TRUE(SetPartition(2, 2, {{1, 3}, {2, 4}}).is_noncrossing());
  EXPECT_FALSE(SetPartition(0, 4, {{1, 3}, {2, 4}}).is_noncrossing());
}

TEST(Enumerate, FrozenCounts) {
  EXPECT_EQ(enumerate_partitions(PartitionFamily::AllNC, 0, 3).size(), 5u);
  const auto pairs = enumerate_partitions(PartitionFamily::PairNC, 0, 2);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs.front(), kCup);
  EXPECT_TRUE(enumerate_partitions(PartitionFamily::EvenNC, 0, 3).empty());
}

TEST(Enumerate, CatalanAndFussCatalan) {
  const std::vector<std::size_t> catalan{1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (int n = 0; n <= 8; ++n)
    EXPECT_EQ(enumerate_partitions(PartitionFamily::AllNC, n / 2, n - n / 2).size(), catalan[static_cast<std::size_t>(n)]);
  for (int m = 0; m <= 4; ++m)
    EXPECT_EQ(enumerate_partitions(PartitionFamily::PairNC, m, m).size(), catalan[static_cast<std::size_t>(m)]);
  // Non-crossing partitions of 2m points into even blocks: C(3m, m) / (2m + 1).
  const std::vector<std::size_t> even{1, 1, 3, 12, 55};
  for (int m = 0; m <= 4; ++m)
    EXPECT_EQ(enumerate_partitions(PartitionFamily::EvenNC, 2 * m - m, m).size(), even[static_cast<std::size_t>(m)]);
}

TEST(Enumerate, MatchesBruteForceOnEveryShape) {
  for (auto family : {PartitionFamily::AllNC, PartitionFamily::PairNC, PartitionFamily::EvenNC})
    for (int u = 0; u <= 4; ++u)
      for (int l = 0; u + l <= 7; ++l) {
        const auto parts = enumerate_partitions(family, u, l);
        EXPECT_EQ(parts.size(), brute_force_count(family, u, l)) << to_string(family) << " " << u << "," << l;
        EXPECT_TRUE(std::is_sorted(parts.begin(), parts.end()));
        EXPECT_EQ(std::set<SetPartition>(parts.begin(), parts.end()).size(), parts.size());
        for (const auto& p : parts) EXPECT_TRUE(belongs_to(family, p));
      }
}

TEST(Enumerate, CapIsEnforced) {
  Limits small;
  small.max_total_points = 6;
  EXPECT_THROW(enumerate_partitions(PartitionFamily::AllNC, 4, 3, small), SizeLimitError);
  EXPECT_NO_THROW(enumerate_partitions(PartitionFamily::AllNC, 3, 3, small));
}

TEST(Compose, LoopExamples) {
  const auto c = compose(kCap, kCup);
  EXPECT_EQ(c.result, SetPartition(0, 0, {}));
  EXPECT_EQ(c.loops, 1);

  const auto p = SetPartition(3, 2, {{1, 4}, {2, 3}, {5}});
  const auto id = compose(SetPartition::identity(2), p);
  EXPECT_EQ(id.result, p);
  EXPECT_EQ(id.loops, 0);

  // Contracted as matrices at N = 3 the closed loop is a factor 3.
  const auto prod = t_map(kCap, 3) * t_map(kCup, 3);
  EXPECT_EQ(prod.matrix(0, 0), Rational(3));
}

TEST(Compose, RejectsShapeMismatch) {
  EXPECT_THROW(compose(kCap, SetPartition::identity(3)), ShapeError);
}

TEST(TMap, SmallExamples) {
  const auto cap = t_map(kCap, 4);
  EXPECT_EQ(cap.matrix.rows(), 1);
  EXPECT_EQ(cap.matrix.cols(), 16);
  EXPECT_EQ(cap.matrix(0, 0), Rational(1));  // e1 ⊗ e1
  EXPECT_EQ(cap.matrix(0, 1), Rational(0));  // e1 ⊗ e2
  const auto singleton = t_map(SetPartition(1, 0, {{1}}), 4);
  EXPECT_EQ(singleton.matrix, MatQ(MatQ::Ones(1, 4)));
  EXPECT_EQ(t_map(SetPartition::identity(2), 3), identity_operator(3, 2));
}

TEST(TMap, TensorIsKronecker) {
  Gen gen(11);
  const auto left = enumerate_partitions(PartitionFamily::AllNC, 1, 2);
  const auto right = enumerate_partitions(PartitionFamily::AllNC, 2, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto& a = gen.pick(left);
    const auto& b = gen.pick(right);
    EXPECT_EQ(t_map(tensor(a, b), 2), tensor(t_map(a, 2), t_map(b, 2)));
  }
}

// T_q T_p = N^c T_{q∘p}, over random composable pairs.
TEST(Property, CompositionMatchesOperators) {
  Gen gen(3);
  for (int trial = 0; trial < 120; ++trial) {
    const auto family = gen.pick(std::vector{PartitionFamily::AllNC, PartitionFamily::PairNC, PartitionFamily::EvenNC});
    const int k = gen.uniform(0, 3), l = gen.uniform(0, 3), m = gen.uniform(0, 3);
    const auto ps = enumerate_partitions(family, k, l);
    const auto qs = enumerate_partitions(family, l, m);
    if (ps.empty() || qs.empty()) continue;
    const auto& p = gen.pick(ps);
    const auto& q = gen.pick(qs);
    const auto c = compose(q, p);
    EXPECT_TRUE(belongs_to(family, c.result)) << q.to_string() << " o " << p.to_string();
    for (int N : {2, 3, 4}) {
      const auto lhs = t_map(q, N) * t_map(p, N);
      const auto rhs = t_map(c.result, N);
      EXPECT_EQ(lhs.matrix, MatQ(Rational(Integer(ipow(static_cast<std::uint64_t>(N), c.loops))) * rhs.matrix))
          << q.to_string() << " o " << p.to_string() << " at N=" << N;
    }
  }
}

TEST(Property, InvolutionIsAdjointAndOrderTwo) {
  for (auto family : {PartitionFamily::AllNC, PartitionFamily::PairNC, PartitionFamily::EvenNC})
    for (int k = 0; k <= 3; ++k)
      for (int l = 0; l <= 3; ++l)
        for (const auto& p : enumerate_partitions(family, k, l)) {
          EXPECT_EQ(p.involution().involution(), p);
          EXPECT_TRUE(belongs_to(family, p.involution()));
          EXPECT_EQ(adjoint(t_map(p, 3)), t_map(p.involution(), 3));
        }
}

TEST(Property, FamiliesClosedUnderTensor) {
  Gen gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto family = gen.pick(std::vector{PartitionFamily::AllNC, PartitionFamily::PairNC, PartitionFamily::EvenNC});
    const auto a = enumerate_partitions(family, gen.uniform(0, 2), gen.uniform(0, 2));
    const auto b = enumerate_partitions(family, gen.uniform(0, 2), gen.uniform(0, 2));
    if (a.empty() || b.empty()) continue;
    EXPECT_TRUE(belongs_to(family, tensor(gen.pick(a), gen.pick(b))));
  }
}

TEST(ThroughBlocks, Examples) {
  EXPECT_EQ(through_block_decomposition(SetPartition::identity(2)), SetPartition::identity(2));

  const SetPartition four(2, 2, {{1, 2, 3, 4}});
  const auto v = through_block_decomposition(four);
  EXPECT_EQ(v, SetPartition(2, 1, {{1, 2, 3}}));
  EXPECT_EQ(compose(v.involution(), v).result, four);

  const SetPartition h(2, 2, {{1, 3}, {2}, {4}});
  const auto w = through_block_decomposition(h);
  EXPECT_EQ(w, tensor(SetPartition::identity(1), SetPartition(1, 0, {{1}})));
  EXPECT_EQ(compose(w.involution(), w).result, h);
}

TEST(ThroughBlocks, RejectsNonProjective) {
  EXPECT_THROW(through_block_decomposition(SetPartition(2, 2, {{1, 4}, {2}, {3}})), PreconditionError);
  EXPECT_THROW(through_block_decomposition(SetPartition(2, 1, {{1, 2, 3}})), PreconditionError);
}

TEST(Property, ThroughBlockFactorization) {
  int projective = 0;
  for (auto family : {PartitionFamily::AllNC, PartitionFamily::EvenNC})
    for (int k = 0; k <= 4; ++k)
      for (const auto& h : enumerate_partitions(family, k, k)) {
        if (!is_projective(h)) continue;
        ++projective;
        const auto v = through_block_decomposition(h);
        EXPECT_EQ(v.lower(), h.through_blocks());
        EXPECT_EQ(v.through_blocks(), h.through_blocks());
        const auto c = compose(v.involution(), v);
        EXPECT_EQ(c.result, h) << h.to_string();
        EXPECT_EQ(c.loops, 0);
      }
  EXPECT_GT(projective, 20);
}
