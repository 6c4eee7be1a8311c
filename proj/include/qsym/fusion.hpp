#ifndef QSYM_FUSION_HPP
#define QSYM_FUSION_HPP

#include "qsym/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qsym {

/// SnPlus, OnPlus: integer labels. HnPlus: words over {0,1}. BSharp:
/// alternating words in ω and u_n (n >= 1).
enum class FusionRing { SnPlus, OnPlus, HnPlus, BSharp };

std::string_view to_string(FusionRing r);
FusionRing ring_from_string(std::string_view name);

/// Letter of a BSharp word: 0 stands for ω, n >= 1 for u_n.
using BLetter = int;
inline constexpr BLetter kOmega = 0;

struct FusionLabel {
  FusionRing ring = FusionRing::SnPlus;
  int n = 0;
  std::string word;
  std::vector<BLetter> letters;

  static FusionLabel sn(int n) { return {FusionRing::SnPlus, n, {}, {}}; }
  static FusionLabel on(int n) { return {FusionRing::OnPlus, n, {}, {}}; }
  static FusionLabel hn(std::string w);
  static FusionLabel bsharp(std::vector<BLetter> letters);

  /// Integer label, word length or letter count.
  int length() const;
  bool is_trivial() const { return length() == 0; }
  std::string to_string() const;

  auto operator<=>(const FusionLabel&) const = default;
};

/// Irreducible labels with multiplicities.
using Decomposition = std::map<FusionLabel, int>;

std::string to_string(const Decomposition& d);

/// ρ_a ⊗ ρ_b for S_N^+, from ρ_1 ⊗ ρ_n = ρ_{n-1} ⊕ ρ_n ⊕ ρ_{n+1} and
/// associativity.
Decomposition sn_tensor(int a, int b);

/// u_a ⊗ u_b for O_N^+, from u_1 ⊗ u_n = u_{n-1} ⊕ u_{n+1} and associativity.
Decomposition on_tensor(int a, int b);

/// Dimension of an integer label; throws for rings without one.
Integer dims(FusionRing ring, int N, const FusionLabel& label);
Integer dims(FusionRing ring, int N, int label);

struct WordInfo {
  std::string reverse, drop_first, drop_last;
  bool is_symmetric = false;
};
WordInfo word_utils(const std::string& w);

/// Containments for x ∈ B_letter, y ∈ B_w:
///   0·w ⊂ 0w ⊕ w ⊕ δ_{w1,0} w_{>1},   1·w ⊂ 1w ⊕ w̄1 w_{>1} ⊕ δ_{w1,1} w_{>1}.
/// For empty w only the letter itself. Not claimed exhaustive.
Decomposition hn_left_tensor(char letter, const std::string& w);
/// w·0 ⊂ w0 ⊕ w ⊕ δ_{wn,0} w_{<n},   w·1 ⊂ w1 ⊕ w_{<n} w̄n ⊕ δ_{wn,1} w_{<n}.
Decomposition hn_right_tensor(const std::string& w, char letter);

/// Free-product fusion for BSharp words: letters from different factors
/// concatenate; at an ω|ω or u|u junction the pair fuses (ω⊗ω = 1,
/// u_a⊗u_b by the O-type rule), the trivial summand recursing inward.
Decomposition bsharp_tensor(const FusionLabel& a, const FusionLabel& b);

/// No common summand between a⊗b and b⊗a.
bool bsharp_disjoint(const FusionLabel& a, const FusionLabel& b);

/// Letters with which the summands of a decomposition start.
std::set<BLetter> leading_letters(const Decomposition& d);

/// All BSharp words with at most `max_letters` letters and u-indices <= max_index.
std::vector<FusionLabel> bsharp_words(int max_letters, int max_index);
/// All binary words of length <= max_length.
std::vector<std::string> binary_words(int max_length);

enum class ClosureMode { Containment, Full };

struct ClosureWitness {
  FusionLabel label, left, right;
};

struct ClosureResult {
  std::set<FusionLabel> closure;
  bool closed = false;
  /// Labels produced from members of the set that were not in it.
  std::vector<ClosureWitness> witnesses;
  /// Pairs with no available containment rule (HnPlus words of length >= 2).
  std::vector<std::pair<FusionLabel, FusionLabel>> undetermined;
  /// Labels beyond the length cap are reported but not iterated.
  int length_cap = 0;
  bool truncated = false;
};

/// Grows S (with conjugates) under products until stable.
///
/// Full (SnPlus, OnPlus): every summand of a⊗b. Containment: squares lie in
/// the ring's base block ({0,1}; {∅,0,1}; {∅,ω,u1,ωu1,u1ω,ωu1ω}), and a
/// product of spectral subspaces of a commutative algebra lies in the
/// common part of a⊗b and b⊗a.
ClosureResult spectrum_closure(FusionRing ring, const std::set<FusionLabel>& s, ClosureMode mode);

/// Conjugate label (reversed word for HnPlus and BSharp; self for integers).
FusionLabel conjugate(const FusionLabel& l);

}  // namespace qsym

#endif
