#include "generators.hpp"

#include "qsym/carrier.hpp"
#include "qsym/errors.hpp"
#include "qsym/fusion.hpp"

#include <gtest/gtest.h>

using namespace qsym;

namespace {

Decomposition sn(std::initializer_list<int> labels) {
  Decomposition d;
  for (int n : labels) d[FusionLabel::sn(n)] += 1;
  return d;
}

Decomposition on(std::initializer_list<int> labels) {
  Decomposition d;
  for (int n : labels) d[FusionLabel::on(n)] += 1;
  return d;
}

Decomposition hn(std::initializer_list<const char*> words) {
  Decomposition d;
  for (const char* w : words) d[FusionLabel::hn(w)] += 1;
  return d;
}

// (x ⊗ y) ⊗ z expanded with the same tensor function.
template <typename F>
Decomposition times(const Decomposition& x, int z, F tensor) {
  Decomposition out;
  for (const auto& [l, m] : x)
    for (const auto& [c, k] : tensor(l.n, z)) out[c] += m * k;
  return out;
}

FusionLabel bs(std::initializer_list<BLetter> letters) { return FusionLabel::bsharp(letters); }

}  // namespace

TEST(SnTensor, GeneratorRule) {
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(sn_tensor(1, n), sn({n - 1, n, n + 1}));
  for (int b = 0; b <= 5; ++b) EXPECT_EQ(sn_tensor(0, b), sn({b}));
  EXPECT_EQ(sn_tensor(2, 2), sn({0, 1, 2, 3, 4}));
}

// Multiplicity of ρ_n in ρ_a ⊗ ρ_b as dim Mor(H_n, H_a ⊗ H_b).
TEST(SnTensor, MatchesMorphismRanks) {
  for (auto [a, b, N] : std::vector<std::tuple<int, int, int>>{{1, 1, 4}, {1, 2, 5}, {2, 2, 5}}) {
    Decomposition ranks;
    for (int n = 0; n <= a + b + 1; ++n) {
      const auto m = morphism_space(PartitionFamily::AllNC, N, {Factor::carrier(n)},
                                    {Factor::carrier(a), Factor::carrier(b)});
      if (m.dim() > 0) ranks[FusionLabel::sn(n)] = static_cast<int>(m.dim());
    }
    EXPECT_EQ(ranks, sn_tensor(a, b)) << a << "⊗" << b;
  }
}

TEST(OnTensor, Examples) {
  EXPECT_EQ(on_tensor(1, 1), on({0, 2}));
  EXPECT_EQ(on_tensor(0, 4), on({4}));
  EXPECT_EQ(on_tensor(2, 1), on({1, 3}));
  EXPECT_EQ(on_tensor(3, 2), on({1, 3, 5}));
}

TEST(OnTensor, MatchesPairMorphismRanks) {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
    Decomposition ranks;
    for (int n = 0; n <= a + b + 1; ++n) {
      const auto m = morphism_space(PartitionFamily::PairNC, 4, {Factor::carrier(n)},
                                    {Factor::carrier(a), Factor::carrier(b)});
      if (m.dim() > 0) ranks[FusionLabel::on(n)] = static_cast<int>(m.dim());
    }
    EXPECT_EQ(ranks, on_tensor(a, b)) << a << "⊗" << b;
  }
}

TEST(Property, SnTensorCommutativeAssociative) {
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) {
      EXPECT_EQ(sn_tensor(a, b), sn_tensor(b, a));
      for (int c = 0; c <= 5; ++c) {
        const auto left = times(sn_tensor(a, b), c, sn_tensor);
        const auto right = times(sn_tensor(b, c), a, sn_tensor);
        EXPECT_EQ(left, right) << a << "," << b << "," << c;
      }
    }
}

TEST(Dims, FrozenValues) {
  const std::vector<int> sn5{1, 4, 11, 29, 76};
  for (int k = 0; k < 5; ++k) EXPECT_EQ(dims(FusionRing::SnPlus, 5, k), sn5[static_cast<std::size_t>(k)]);
  const std::vector<int> on4{1, 4, 15, 56};
  for (int k = 0; k < 4; ++k) EXPECT_EQ(dims(FusionRing::OnPlus, 4, k), on4[static_cast<std::size_t>(k)]);
  EXPECT_EQ(dims(FusionRing::SnPlus, 4, 2), Integer((4 - 1) * (4 - 1) - 4));
  EXPECT_THROW(dims(FusionRing::SnPlus, 3, 1), PreconditionError);
  EXPECT_THROW(dims(FusionRing::HnPlus, 4, 1), PreconditionError);
}

TEST(Dims, MatchCarrierRanks) {
  for (int k = 0; k <= 3; ++k) {
    EXPECT_EQ(dims(FusionRing::SnPlus, 5, k), Integer(carrier_basis(PartitionFamily::AllNC, 5, k).cols()));
    EXPECT_EQ(dims(FusionRing::OnPlus, 4, k), Integer(carrier_basis(PartitionFamily::PairNC, 4, k).cols()));
  }
}

TEST(Property, DimensionIsARingHomomorphism) {
  for (int N : {4, 5, 6})
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b) {
        Integer s = 0, o = 0;
        for (const auto& [l, m] : sn_tensor(a, b)) s += m * dims(FusionRing::SnPlus, N, l);
        for (const auto& [l, m] : on_tensor(a, b)) o += m * dims(FusionRing::OnPlus, N, l);
        EXPECT_EQ(s, dims(FusionRing::SnPlus, N, a) * dims(FusionRing::SnPlus, N, b));
        EXPECT_EQ(o, dims(FusionRing::OnPlus, N, a) * dims(FusionRing::OnPlus, N, b));
      }
}

TEST(Words, Utils) {
  const auto w = word_utils("01");
  EXPECT_EQ(w.reverse, "10");
  EXPECT_EQ(w.drop_first, "1");
  EXPECT_EQ(w.drop_last, "0");
  EXPECT_FALSE(w.is_symmetric);
  EXPECT_TRUE(word_utils("010").is_symmetric);
  EXPECT_TRUE(word_utils("").is_symmetric);
  EXPECT_THROW(FusionLabel::hn("012"), PreconditionError);
}

TEST(HnTensor, DisplayedExamples) {
  EXPECT_EQ(hn_left_tensor('0', "01"), hn({"001", "01", "1"}));
  EXPECT_EQ(hn_left_tensor('1', "01"), hn({"101", "11"}));
  EXPECT_EQ(hn_left_tensor('0', "1"), hn({"01", "1"}));
  EXPECT_EQ(hn_right_tensor("10", '0'), hn({"100", "10", "1"}));
}

TEST(Property, HnLeftRightMirror) {
  for (const auto& w : binary_words(6))
    for (char letter : {'0', '1'}) {
      Decomposition mirrored;
      for (const auto& [l, m] : hn_left_tensor(letter, w)) mirrored[conjugate(l)] += m;
      EXPECT_EQ(mirrored, hn_right_tensor(word_utils(w).reverse, letter)) << letter << "·" << w;
    }
}

TEST(BSharp, JunctionFusion) {
  const BLetter w = kOmega;
  // ωu1ω ⊗ ωu1 = ωu2 ⊕ ω  and  ωu1 ⊗ ωu1ω = ωu1ωu1ω.
  Decomposition expected;
  expected[bs({w, 2})] = 1;
  expected[bs({w})] = 1;
  EXPECT_EQ(bsharp_tensor(bs({w, 1, w}), bs({w, 1})), expected);
  Decomposition concat;
  concat[bs({w, 1, w, 1, w})] = 1;
  EXPECT_EQ(bsharp_tensor(bs({w, 1}), bs({w, 1, w})), concat);
  EXPECT_TRUE(bsharp_disjoint(bs({1}), bs({w, 1})));
  EXPECT_THROW(FusionLabel::bsharp({1, 2}), PreconditionError);
}

TEST(BSharp, OmegaNeverSharesWithItsMirror) {
  const auto omega = bs({kOmega});
  int tested = 0;
  for (const auto& w : bsharp_words(4, 2)) {
    if (w.letters.empty() || w == omega) continue;
    ++tested;
    const auto left = bsharp_tensor(omega, w);
    const auto right = bsharp_tensor(w, omega);
    EXPECT_TRUE(bsharp_disjoint(omega, w)) << w.to_string();
    const auto l = leading_letters(left), r = leading_letters(right);
    std::vector<BLetter> common;
    std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(common));
    EXPECT_TRUE(common.empty()) << w.to_string();
  }
  EXPECT_EQ(tested, 20);
}

TEST(Closure, SnFullReportsNextLabel) {
  const auto r = spectrum_closure(FusionRing::SnPlus, {FusionLabel::sn(0), FusionLabel::sn(1)}, ClosureMode::Full);
  EXPECT_FALSE(r.closed);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_EQ(r.witnesses.front().label, FusionLabel::sn(2));
  EXPECT_EQ(r.witnesses.front().left, FusionLabel::sn(1));
  EXPECT_TRUE(r.truncated);
}

TEST(Closure, ContainmentBlocksAreClosed) {
  EXPECT_TRUE(spectrum_closure(FusionRing::SnPlus, {FusionLabel::sn(0), FusionLabel::sn(1)}, ClosureMode::Containment).closed);
  EXPECT_TRUE(spectrum_closure(FusionRing::HnPlus, {FusionLabel::hn(""), FusionLabel::hn("0"), FusionLabel::hn("1")},
                               ClosureMode::Containment)
                  .closed);
  const BLetter w = kOmega;
  EXPECT_TRUE(spectrum_closure(FusionRing::BSharp,
                               {bs({}), bs({w}), bs({1}), bs({w, 1}), bs({1, w}), bs({w, 1, w})},
                               ClosureMode::Containment)
                  .closed);
}

// B' ⊕ B_w is closed for every symmetric, non-constant word w.
TEST(Closure, SymmetricNonConstantWordsJoinTheBaseBlock) {
  for (const auto& w : binary_words(6)) {
    const auto info = word_utils(w);
    const bool constant = w.find('0') == std::string::npos || w.find('1') == std::string::npos;
    if (!info.is_symmetric || constant) continue;
    const auto r = spectrum_closure(
        FusionRing::HnPlus, {FusionLabel::hn(""), FusionLabel::hn("0"), FusionLabel::hn("1"), FusionLabel::hn(w)},
        ClosureMode::Containment);
    EXPECT_TRUE(r.closed) << w;
  }
}

TEST(Closure, NonSymmetricWordLeavesPairsUndetermined) {
  const auto r = spectrum_closure(FusionRing::HnPlus, {FusionLabel::hn("01")}, ClosureMode::Containment);
  EXPECT_FALSE(r.closed);
  EXPECT_TRUE(r.closure.count(FusionLabel::hn("10")));
  EXPECT_FALSE(r.undetermined.empty());
}

TEST(Closure, UnsupportedModes) {
  EXPECT_THROW(spectrum_closure(FusionRing::HnPlus, {}, ClosureMode::Full), PreconditionError);
  EXPECT_THROW(spectrum_closure(FusionRing::BSharp, {}, ClosureMode::Full), PreconditionError);
  EXPECT_THROW(spectrum_closure(FusionRing::OnPlus, {}, ClosureMode::Containment), PreconditionError);
}

TEST(Property, ClosureWitnessesAreGenuine) {
  qsym::testing::Gen gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::set<FusionLabel> s;
    const int n = gen.uniform(1, 3);
    for (int i = 0; i < n; ++i) s.insert(FusionLabel::sn(gen.uniform(0, 3)));
    const auto r = spectrum_closure(FusionRing::SnPlus, s, ClosureMode::Full);
    EXPECT_LE(static_cast<int>(r.closure.size()), r.length_cap + 1);
    for (const auto& w : r.witnesses) {
      EXPECT_TRUE(sn_tensor(w.left.n, w.right.n).count(w.label));
      EXPECT_TRUE(r.closure.count(w.left) && r.closure.count(w.right));
    }
  }
}
