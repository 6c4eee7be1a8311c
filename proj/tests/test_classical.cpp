#include "generators.hpp"

#include "qsym/classical.hpp"
#include "qsym/errors.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <numeric>

using namespace qsym;
using qsym::testing::Gen;

namespace {

using ModelQ = MatrixModel<Rational>;
using Perm = std::vector<int>;

Perm swap_perm(int n, int a, int b) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::swap(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]);
  return p;
}

FiniteAction standard_sn(int N) {
  FiniteAction a;
  a.N = N;
  a.size = N;
  for (int i = 0; i + 1 < N; ++i) a.transpositions.push_back(swap_perm(N, i, i + 1));
  a.quantum = [](const ModelQ& m) { return standard_action(m); };
  return a;
}

FiniteAction trivial_sn(int N, int points) {
  FiniteAction a;
  a.N = N;
  a.size = points;
  Perm id(static_cast<std::size_t>(points));
  std::iota(id.begin(), id.end(), 0);
  a.transpositions.assign(static_cast<std::size_t>(N - 1), id);
  return a;
}

std::vector<std::vector<int>> subsets(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

std::vector<ModelQ> block_models(int count) {
  std::vector<ModelQ> out{block_model_at(std::numbers::pi / 5)};
  Gen g;
  while (static_cast<int>(out.size()) < count) out.push_back(seeded_block_model(g.engine()()));
  return out;
}

std::vector<ModelQ> hn_models(int N, int count) {
  Gen g;
  std::vector<ModelQ> out;
  for (int c = 0; c < count; ++c) {
    std::vector<MatQ> r;
    for (int k = 0; k < N * N; ++k) r.push_back(line_projection(random_slope(g.engine())));
    out.push_back(hn_quantum_model(perm_model<Rational>(g.permutation(N)), r));
  }
  std::vector<int> eps(static_cast<std::size_t>(N), 1);
  eps.front() = -1;
  out.push_back(signed_perm_model<Rational>(g.permutation(N), eps));
  out.push_back(tensor_model(out[0], out.back()));
  return out;
}

// Orbit mean computed directly from the orbit list.
VecQ orbit_mean(const FiniteAction& a, const VecQ& f) {
  VecQ out(a.size);
  for (const auto& o : orbits(a)) {
    Rational s = 0;
    for (int x : o) s += f(x);
    for (int x : o) out(x) = s / Rational(static_cast<long>(o.size()));
  }
  return out;
}

// S_6 acting on 6 points through the outer automorphism: each Coxeter
// generator goes to a fixed-point-free involution. Found by search.
FiniteAction exotic_s6() {
  std::vector<Perm> involutions;
  Perm p{0, 1, 2, 3, 4, 5};
  do {
    bool ok = true;
    for (int i = 0; i < 6; ++i) ok = ok && p[static_cast<std::size_t>(i)] != i && p[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] == i;
    if (ok) involutions.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto comp = [](const Perm& x, const Perm& y) {
    Perm o(6);
    for (int i = 0; i < 6; ++i) o[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])];
    return o;
  };
  auto order_divides = [&](const Perm& x, int k) {
    Perm q{0, 1, 2, 3, 4, 5};
    for (int i = 0; i < k; ++i) q = comp(x, q);
    return q == Perm{0, 1, 2, 3, 4, 5};
  };
  std::vector<Perm> chosen;
  std::function<bool()> search = [&]() {
    if (chosen.size() == 5) return true;
    for (const auto& c : involutions) {
      bool ok = true;
      for (std::size_t j = 0; j < chosen.size() && ok; ++j) {
        const int order = j + 1 == chosen.size() ? 3 : 2;
        ok = order_divides(comp(chosen[j], c), order) && comp(chosen[j], c) != Perm{0, 1, 2, 3, 4, 5};
      }
      if (!ok) continue;
      chosen.push_back(c);
      if (search()) return true;
      chosen.pop_back();
    }
    return false;
  };
  EXPECT_TRUE(search());
  FiniteAction a;
  a.N = 6;
  a.size = 6;
  a.transpositions = chosen;
  return a;
}

}  // namespace

TEST(Orbits, StandardAndTrivial) {
  const auto s = standard_sn(5);
  validate_action(s);
  EXPECT_EQ(orbits(s).size(), 1u);
  EXPECT_TRUE(fixed_points(s).empty());
  const auto t = trivial_sn(4, 3);
  EXPECT_EQ(fixed_points(t), (std::vector<int>{0, 1, 2}));
}

TEST(Orbits, HuangTwoPointExample) {
  const auto b = huang_build(2, {1}, 4);
  EXPECT_EQ(b.action.size, 5);
  const auto o = orbits(b.action);
  ASSERT_EQ(o.size(), 2u);
  EXPECT_EQ(o[0].size(), 4u);
  EXPECT_EQ(o[1].size(), 1u);
  EXPECT_EQ(fixed_points(b.action).size(), 1u);
  EXPECT_EQ(b.action.names[4], "z1");
}

TEST(Orbits, QuantumSupportMatchesClassical) {
  for (const auto& Z : subsets(3)) {
    const auto b = huang_build(3, Z, 4);
    auto models = block_models(2);
    models.push_back(regular_model(GroupTag::SN, 4));
    const auto q = quantum_orbits(b.action, models);
    EXPECT_TRUE(q.matches_classical);
    EXPECT_TRUE(q.refines_classical);
    // block models alone only see part of each orbit
    const auto partial = quantum_orbits(b.action, block_models(3));
    EXPECT_TRUE(partial.refines_classical);
  }
}

TEST(Orbits, SupportOfSingleCycleIsNotEquivalence) {
  const auto a = standard_sn(4);
  EXPECT_THROW(quantum_orbits(a, {perm_model<Rational>({1, 2, 3, 0})}), ModelError);
}

TEST(Orbits, BrokenRelationsRejected) {
  auto a = standard_sn(4);
  a.transpositions[1] = a.transpositions[0];  // (s0 s1)^3 != 1
  EXPECT_THROW(validate_action(a), ModelError);
  a = standard_sn(4);
  a.transpositions[0] = {1, 2, 0, 3};
  EXPECT_THROW(validate_action(a), ModelError);
}

TEST(Isotypic, Examples) {
  auto t = isotypic_decomposition(standard_sn(5));
  EXPECT_EQ(t.rows[0].multiplicity, 1);
  EXPECT_EQ(t.rows[1].multiplicity, 1);
  EXPECT_EQ(t.remainder, 0);
  EXPECT_TRUE(t.ergodic);

  const auto two = huang_build(2, {}, 4);
  t = isotypic_decomposition(two.action);
  EXPECT_EQ(t.rows[0].multiplicity, 2);
  EXPECT_EQ(t.rows[1].multiplicity, 2);
  EXPECT_EQ(t.remainder, 0);
  EXPECT_FALSE(t.ergodic);

  t = isotypic_decomposition(trivial_sn(4, 3));
  EXPECT_EQ(t.rows[0].multiplicity, 3);
  EXPECT_EQ(t.rows[1].multiplicity, 0);
}

TEST(Isotypic, TrivialMultiplicityCountsOrbits) {
  for (int N = 4; N <= 6; ++N)
    for (const auto& Z : subsets(3)) {
      const auto b = huang_build(3, Z, N);
      const auto t = isotypic_decomposition(b.action);
      EXPECT_EQ(t.rows[0].multiplicity, static_cast<int>(orbits(b.action).size()));
      EXPECT_EQ(t.rows[1].multiplicity, 3 - static_cast<int>(Z.size()));
      EXPECT_EQ(t.remainder, 0);
    }
}

TEST(Isotypic, ExoticActionHasNoStandardComponent) {
  // character of the exotic 6-point action is not fix-1 on transpositions,
  // so the "standard" multiplicity is 0 and the rest lands in the remainder
  const auto t = isotypic_decomposition(exotic_s6());
  EXPECT_EQ(t.rows[0].multiplicity, 1);
  EXPECT_EQ(t.rows[1].multiplicity, 0);
  EXPECT_EQ(t.remainder, 5);
}

TEST(Isotypic, HyperoctahedralDoubled) {
  const auto b = hn_build(1, {}, {}, 3);
  const auto t = isotypic_decomposition(b.action);
  // C^{2N} = trivial + signed + standard
  EXPECT_EQ(t.rows[0].multiplicity, 1);
  EXPECT_EQ(t.rows[1].multiplicity, 1);
  EXPECT_EQ(t.rows[2].multiplicity, 1);
  EXPECT_EQ(t.remainder, 0);
}

TEST(Isotypic, OversizeGroup) {
  EXPECT_THROW(isotypic_decomposition(standard_sn(8)), SizeLimitError);
  EXPECT_THROW(isotypic_decomposition(hn_build(1, {}, {}, 5).action), SizeLimitError);
}

TEST(ConditionalExpectation, Examples) {
  const auto b = huang_build(2, {1}, 4);
  VecQ f = VecQ::Zero(5);
  f(0) = 1;
  const VecQ e = conditional_expectation(b.action, f);
  for (int x = 0; x < 4; ++x) EXPECT_EQ(e(x), Rational(1, 4));
  EXPECT_EQ(e(4), 0);
  EXPECT_EQ(conditional_expectation(b.action, e), e);
  VecQ zero_mean = VecQ::Zero(5);
  zero_mean(0) = 1;
  zero_mean(1) = -1;
  EXPECT_TRUE(conditional_expectation(b.action, zero_mean).isZero());
}

TEST(ConditionalExpectation, Property) {
  Gen g;
  for (int c = 0; c < 20; ++c) {
    const int y = g.uniform(1, 3), N = g.uniform(4, 5);
    std::vector<int> Z;
    for (int i = 0; i < y; ++i)
      if (g.coin()) Z.push_back(i);
    const auto b = huang_build(y, Z, N);
    VecQ f(b.action.size);
    for (int x = 0; x < b.action.size; ++x) f(x) = Rational(g.uniform(0, 9), g.uniform(1, 5));
    const VecQ e = conditional_expectation(b.action, f);
    EXPECT_EQ(e, orbit_mean(b.action, f));
    EXPECT_EQ(conditional_expectation(b.action, e), e);
    for (int x = 0; x < b.action.size; ++x) EXPECT_GE(e(x), 0);
    EXPECT_EQ(conditional_expectation(b.action, VecQ::Ones(b.action.size)), VecQ::Ones(b.action.size));
  }
}

TEST(HuangBuild, Extremes) {
  const auto free = huang_build(3, {}, 5);
  EXPECT_EQ(free.action.size, 15);
  EXPECT_EQ(orbits(free.action).size(), 3u);
  const auto collapsed = huang_build(3, {0, 1, 2}, 5);
  EXPECT_EQ(collapsed.action.size, 3);
  EXPECT_EQ(fixed_points(collapsed.action).size(), 3u);
  EXPECT_THROW(huang_build(3, {3}, 5), PreconditionError);
  EXPECT_THROW(huang_build(3, {1, 0}, 5), PreconditionError);
  EXPECT_THROW(huang_build(3, {}, 3), PreconditionError);
}

TEST(HuangBuild, SizeFormula) {
  for (int y = 0; y <= 4; ++y)
    for (const auto& Z : subsets(y))
      for (int N = 4; N <= 6; ++N) {
        const auto b = huang_build(y, Z, N);
        EXPECT_EQ(b.action.size, b.model.num_points());
        EXPECT_EQ(b.action.size, N * (y - static_cast<int>(Z.size())) + static_cast<int>(Z.size()));
        EXPECT_TRUE(check_quantum_restriction(b.action).empty());
      }
}

TEST(HuangBuild, QuantumInvarianceExact) {
  const auto b = huang_build(2, {1}, 4);
  const auto r = huang_invariance(b, block_models(5));
  EXPECT_TRUE(r.pass) << r.witness;
  EXPECT_EQ(r.models_checked, 5);
  const auto models = block_models(2);
  const auto q = b.action.quantum(models[0]);
  EXPECT_TRUE(validate_coaction<Rational>(b.action.quantum, models[0], {{models[0], models[1]}}, counit_model<Rational>(4)).pass());
  // the fixed point only sees the unit
  EXPECT_EQ(q.coeff(4, 4), MatQ::Identity(2, 2));
}

// Gluing only two of the four copies over a point is not invariant once the
// entries stop commuting with the row structure.
TEST(HuangBuild, PartialGluingNotInvariant) {
  std::vector<std::vector<int>> classes{{0, 1}, {2}, {3}};
  const auto g = Gluing::from_classes(4, classes);
  const auto d = descend(standard_action(block_model_at(std::numbers::pi / 5)), g);
  EXPECT_TRUE(d.invariant);  // {0,1} is a block of the block model
  const auto g2 = Gluing::from_classes(4, {{0, 2}, {1}, {3}});
  const auto d2 = descend(standard_action(block_model_at(std::numbers::pi / 5)), g2);
  EXPECT_FALSE(d2.invariant);
  EXPECT_FALSE(d2.witness.empty());
}

TEST(HuangClassify, StandardAction) {
  const auto c = huang_classify(standard_sn(5));
  ASSERT_TRUE(c.is_huang) << c.reason;
  EXPECT_EQ(c.model.y_size, 1);
  EXPECT_TRUE(c.model.Z.empty());
}

TEST(HuangClassify, IllegalOrbitSize) {
  FiniteAction a = standard_sn(4);
  a.size = 6;
  for (auto& t : a.transpositions) {
    t.push_back(4);
    t.push_back(5);
  }
  // s_0 also swaps the extra pair: a 2-orbit
  a.transpositions[0][4] = 5;
  a.transpositions[0][5] = 4;
  a.transpositions[2][4] = 5;
  a.transpositions[2][5] = 4;
  a.transpositions[1][4] = 5;
  a.transpositions[1][5] = 4;
  a.quantum = nullptr;
  validate_action(a);
  const auto c = huang_classify(a);
  EXPECT_FALSE(c.is_huang);
  EXPECT_EQ(c.witness, (std::vector<int>{4, 5}));
}

TEST(HuangClassify, ExoticSixPointOrbit) {
  const auto a = exotic_s6();
  validate_action(a);
  EXPECT_EQ(orbits(a).size(), 1u);
  const auto c = huang_classify(a);
  EXPECT_FALSE(c.is_huang);
  EXPECT_EQ(c.witness.size(), 6u);
}

TEST(HuangClassify, RoundTrip) {
  const auto models = block_models(2);
  int checked = 0;
  for (int N = 4; N <= 7; ++N)
    for (int y = 0; y <= 5; ++y)
      for (const auto& Z : subsets(y)) {
        const auto b = huang_build(y, Z, N);
        const auto c = huang_classify(b.action, N == 4 ? models : std::vector<ModelQ>{});
        ASSERT_TRUE(c.is_huang) << c.reason;
        EXPECT_EQ(c.model.y_size, y);
        EXPECT_EQ(c.model.Z.size(), Z.size());
        EXPECT_EQ(c.quantum_verified, N == 4);
        ++checked;
      }
  EXPECT_EQ(checked, 4 * 63);
}

TEST(HuangClassify, ScrambledInputRecovered) {
  Gen g;
  for (int c = 0; c < 15; ++c) {
    const int y = g.uniform(1, 4), N = g.uniform(4, 6);
    std::vector<int> Z;
    for (int i = 0; i < y; ++i)
      if (g.coin()) Z.push_back(i);
    const auto b = huang_build(y, Z, N);
    // relabel points by a random bijection
    const auto sigma = g.permutation(b.action.size);
    FiniteAction a = b.action;
    for (std::size_t k = 0; k < a.transpositions.size(); ++k)
      for (int x = 0; x < a.size; ++x) {
        const int image = b.action.transpositions[k][static_cast<std::size_t>(x)];
        a.transpositions[k][static_cast<std::size_t>(sigma[static_cast<std::size_t>(x)])] = sigma[static_cast<std::size_t>(image)];
      }
    a.quantum = nullptr;
    const auto r = huang_classify(a);
    ASSERT_TRUE(r.is_huang) << r.reason;
    EXPECT_EQ(r.model.y_size, y);
    EXPECT_EQ(r.model.Z.size(), Z.size());
    EXPECT_TRUE(check_equivariance(huang_build(r.model.y_size, r.model.Z, N).action, a, r.to_action, {}).empty());
  }
}

TEST(HuangClassify, RestrictionCrossCheckAtSix) {
  for (int y = 1; y <= 3; ++y)
    for (const auto& Z : subsets(y)) EXPECT_TRUE(restriction_cross_check(huang_build(y, Z, 6).action));
  // quantum restriction: S_5^+ models pushed through u -> diag(u, 1)
  const auto b = huang_build(2, {1}, 6);
  const auto r = restrict_action(b.action, 5);
  const auto m = extend_model(block_model_at(std::numbers::pi / 5), 5);
  EXPECT_TRUE(validate_magic(m).pass());
  EXPECT_TRUE(validate_coaction<Rational>(r.quantum, m, {{m, m}}, counit_model<Rational>(5)).pass());
  const auto q = quantum_orbits(r, {m, regular_model(GroupTag::SN, 5)});
  EXPECT_TRUE(q.matches_classical);
  EXPECT_EQ(q.classes.size(), 3u);  // 5-orbit, the sixth copy, and the glued point
}

TEST(HnBuild, Examples) {
  const auto free = hn_build(2, {}, {}, 3);
  EXPECT_EQ(free.action.size, 12);
  EXPECT_EQ(orbits(free.action).size(), 2u);
  const auto b = hn_build(2, {1}, {0, 1}, 3);
  EXPECT_EQ(b.action.size, 4);
  EXPECT_EQ(b.model.num_points(), 4);
  const auto half = hn_build(2, {}, {0, 1}, 3);
  EXPECT_EQ(half.action.size, 6);
  EXPECT_THROW(hn_build(2, {0}, {1}, 3), PreconditionError);
}

TEST(HnBuild, SizeFormulaByEnumeration) {
  for (int N = 1; N <= 4; ++N)
    for (int y = 0; y <= 3; ++y)
      for (const auto& Z1 : subsets(y))
        for (const auto& Z0 : subsets(y)) {
          if (!std::includes(Z1.begin(), Z1.end(), Z0.begin(), Z0.end())) continue;
          const auto b = hn_build(y, Z0, Z1, N);
          int by_orbits = 0;
          for (const auto& o : orbits(b.action)) by_orbits += static_cast<int>(o.size());
          EXPECT_EQ(by_orbits, b.model.num_points());
          validate_action(b.action);
          EXPECT_TRUE(check_quantum_restriction(b.action).empty());
        }
}

TEST(HnBuild, InvarianceOverModels) {
  for (int N = 1; N <= 3; ++N) {
    const auto models = hn_models(N, 3);
    for (int y = 1; y <= 3; ++y)
      for (const auto& Z1 : subsets(y))
        for (const auto& Z0 : subsets(y)) {
          if (!std::includes(Z1.begin(), Z1.end(), Z0.begin(), Z0.end())) continue;
          const auto r = hn_invariance(hn_build(y, Z0, Z1, N), models);
          EXPECT_TRUE(r.pass) << r.witness;
        }
  }
}

TEST(HnBuild, WrongPairingNotInvariant) {
  // pairing e_0 with e_1 instead of e_{0+N}
  const int N = 3;
  const auto g = Gluing::from_classes(6, {{0, 1}, {2}, {3}, {4}, {5}});
  const auto d = descend(hn_standard_action(hn_models(N, 1).front()), g);
  EXPECT_FALSE(d.invariant);
}

TEST(HnClassify, RoundTrip) {
  const auto models = hn_models(3, 2);
  for (int y = 0; y <= 3; ++y)
    for (const auto& Z1 : subsets(y))
      for (const auto& Z0 : subsets(y)) {
        if (!std::includes(Z1.begin(), Z1.end(), Z0.begin(), Z0.end())) continue;
        const auto b = hn_build(y, Z0, Z1, 3);
        const auto c = hn_classify(b.action, models);
        ASSERT_TRUE(c.ok) << c.reason;
        EXPECT_EQ(c.model.y_size, y);
        EXPECT_EQ(c.model.Z0, Z0);
        EXPECT_EQ(c.model.Z1, Z1);
        EXPECT_TRUE(c.quantum_verified);
      }
}

TEST(HnClassify, SignsActingOnNOrbitRejected) {
  // N-orbit of S_3 where every g_k acts by the same involution: fails
  // unless that involution is trivial
  auto b = hn_build(1, {}, {0}, 3);
  FiniteAction a = b.action;
  a.quantum = nullptr;
  for (auto& g : a.signs) g = {0, 1, 2};
  validate_action(a);
  EXPECT_TRUE(hn_classify(a).ok);
  // sign-character action on two points: g_k swaps, S_N fixes
  FiniteAction s;
  s.group = GroupTag::HN;
  s.N = 3;
  s.size = 2;
  s.transpositions.assign(2, {0, 1});
  s.signs.assign(3, {1, 0});
  validate_action(s);
  const auto c = hn_classify(s);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.witness, (std::vector<int>{0, 1}));
}

TEST(Products, TrivialSecondFactor) {
  const auto b = huang_build(2, {1}, 4);
  std::vector<int> id(static_cast<std::size_t>(b.action.size));
  std::iota(id.begin(), id.end(), 0);
  const auto beta = z2_action(id);
  const auto models = block_models(2);
  std::vector<ModelPair> pairs{{models[0], z2_regular_model()}, {models[1], z2_regular_model()}};
  EXPECT_TRUE(commuting_check(b.action.quantum, beta, pairs).commuting);
  const auto gamma = product_build(b.action.quantum, beta, pairs);
  const auto [alpha2, beta2] = product_split(gamma, counit_model<Rational>(4), z2_counit_model());
  for (const auto& m : models) EXPECT_TRUE(same_coefficients(alpha2(m), b.action.quantum(m)));
}

TEST(Products, HuangWithInvolutionOfY) {
  const auto models = block_models(2);
  const auto z2 = z2_regular_model();
  int cases = 0;
  for (int y = 1; y <= 3; ++y) {
    std::vector<int> g(static_cast<std::size_t>(y));
    std::iota(g.begin(), g.end(), 0);
    do {
      bool involution = true;
      for (int i = 0; i < y; ++i) involution = involution && g[static_cast<std::size_t>(g[static_cast<std::size_t>(i)])] == i;
      if (!involution) continue;
      for (const auto& Z : subsets(y)) {
        bool fixes = true;
        for (int z : Z) fixes = fixes && std::binary_search(Z.begin(), Z.end(), g[static_cast<std::size_t>(z)]);
        if (!fixes) {
          EXPECT_THROW(extend_involution(huang_build(y, Z, 4), g), PreconditionError);
          continue;
        }
        const auto b = huang_build(y, Z, 4);
        const auto beta = z2_action(extend_involution(b, g));
        std::vector<ModelPair> pairs{{models[0], z2}, {models[1], z2}, {perm_model<Rational>({1, 0, 3, 2}), z2}};
        const auto check = commuting_check(b.action.quantum, beta, pairs);
        ASSERT_TRUE(check.commuting) << check.witness;
        const auto gamma = product_build(b.action.quantum, beta, pairs);
        const auto r = validate_product_action(gamma, {{{models[0], z2}, {models[1], z2}}},
                                               {counit_model<Rational>(4), z2_counit_model()});
        EXPECT_TRUE(r.pass()) << r.first_failure()->check;
        const auto [a2, b2] = product_split(gamma, counit_model<Rational>(4), z2_counit_model());
        for (const auto& m : models) EXPECT_TRUE(same_coefficients(a2(m), b.action.quantum(m)));
        EXPECT_TRUE(same_coefficients(b2(z2), beta(z2)));
        const auto gamma2 = product_build(a2, b2, pairs);
        for (const auto& [m, h] : pairs) EXPECT_TRUE(same_coefficients(gamma2(m, h), gamma(m, h)));
        ++cases;
      }
    } while (std::next_permutation(g.begin(), g.end()));
  }
  EXPECT_GT(cases, 10);
}

// Smallest pair of non-commuting Z_2 actions by involutions, by search.
TEST(Products, NonCommutingPairFoundBySearch) {
  const auto z2 = z2_regular_model();
  std::vector<Perm> involutions;
  Perm p{0, 1, 2};
  do {
    bool ok = true;
    for (int i = 0; i < 3; ++i) ok = ok && p[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] == i;
    if (ok) involutions.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  bool found = false;
  for (const auto& g : involutions)
    for (const auto& h : involutions) {
      if (found) break;
      const auto r = commuting_check(z2_action(g), z2_action(h), {{z2, z2}});
      if (!r.commuting) {
        found = true;
        EXPECT_FALSE(r.witness.empty());
        EXPECT_THROW(product_build(z2_action(g), z2_action(h), {{z2, z2}}), PreconditionError);
      }
    }
  EXPECT_TRUE(found);
}
