#ifndef QSYM_CLASSICAL_HPP
#define QSYM_CLASSICAL_HPP

#include "qsym/errors.hpp"
#include "qsym/magic.hpp"
#include "qsym/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qsym {

enum class GroupTag { SN, HN };
std::string to_string(GroupTag g);
GroupTag group_from_string(const std::string& s);

/// Action of S_N (or H_N) on a finite set X = {0..size-1}, given by the
/// images of the generators: transpositions s_a = (a a+1), a = 0..N-2, and
/// for H_N the sign flips g_k, k = 0..N-1. The optional quantum rule
/// evaluates the coaction of S_N^+ (or H_N^+) in a finite model.
struct FiniteAction {
  GroupTag group = GroupTag::SN;
  int N = 0;
  int size = 0;
  std::vector<std::string> names;
  std::vector<std::vector<int>> transpositions;
  std::vector<std::vector<int>> signs;
  CoactionRule<Rational> quantum;

  bool has_quantum() const { return static_cast<bool>(quantum); }
};

/// Images of the generators on the label set: [N] for S_N, [2N] for H_N,
/// where g_k swaps k and k+N and s_a acts on both halves.
std::vector<std::vector<int>> label_generators(GroupTag group, int N);

/// All generator images on X, transpositions first.
std::vector<std::vector<int>> generators(const FiniteAction& a);

/// Throws ModelError unless every generator image is a bijection of X and
/// the Coxeter / semidirect relations hold.
void validate_action(const FiniteAction& a);

/// Checks that the quantum rule reduces to the generator images under the
/// scalar (permutation / signed permutation) models of the generators.
/// Returns a description of the first mismatch, empty on success.
std::string check_quantum_restriction(const FiniteAction& a);

std::vector<std::vector<int>> orbits(const FiniteAction& a);
std::vector<int> fixed_points(const FiniteAction& a);

struct QuantumOrbits {
  std::vector<std::vector<int>> classes;
  bool matches_classical = false;
  bool refines_classical = false;
};

/// Classes of the support relation x ~ y iff q_yx != 0 in some supplied
/// model. Throws ModelError if the relation is not an equivalence.
QuantumOrbits quantum_orbits(const FiniteAction& a, const std::vector<MatrixModel<Rational>>& models);

/// Direct sum of all scalar models of the classical group: a model whose
/// support relation is exactly the classical orbit relation.
MatrixModel<Rational> regular_model(GroupTag group, int N);

struct GroupElement {
  std::vector<int> on_labels;
  std::vector<int> on_points;
};

/// Every element of S_N (N <= 7) or H_N (N <= 4) with its image on X.
/// Throws SizeLimitError above that and ModelError if the generator images
/// do not define a homomorphism.
std::vector<GroupElement> enumerate_group(const FiniteAction& a);

struct IsotypicRow {
  std::string irrep;
  int dim = 0;
  int multiplicity = 0;
};

struct IsotypicTable {
  std::vector<IsotypicRow> rows;
  int remainder = 0;
  bool ergodic = false;
};

IsotypicTable isotypic_decomposition(const FiniteAction& a);

/// Group average of f over the acting group; projection onto orbit-constant
/// functions.
VecQ conditional_expectation(const FiniteAction& a, const VecQ& f);

/// Equivalence relation on a cover set; its classes are the points of the
/// quotient.
struct Gluing {
  int cover_size = 0;
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes;

  static Gluing from_classes(int cover_size, std::vector<std::vector<int>> classes);
};

struct Descent {
  bool invariant = true;
  std::string witness;
  CoactionMap<Rational> quotient;
};

/// Algebra of class-constant functions: invariant iff α(1_C) is class
/// constant for every class C. The quotient coaction is read off then.
Descent descend(const CoactionMap<Rational>& cover, const Gluing& g);

/// Cover coaction on C(Y) ⊗ C^n: δ_y ⊗ e_i -> Σ_j δ_y ⊗ e_j ⊗ q_ji.
CoactionMap<Rational> product_cover(const CoactionMap<Rational>& base, int y_size);

struct HuangModel {
  int y_size = 0;
  std::vector<int> Z;
  int N = 0;

  int num_points() const { return N * (y_size - static_cast<int>(Z.size())) + static_cast<int>(Z.size()); }
};

struct HnHuangModel {
  int y_size = 0;
  std::vector<int> Z0;
  std::vector<int> Z1;
  int N = 0;

  int num_points() const {
    const int z0 = static_cast<int>(Z0.size()), z1 = static_cast<int>(Z1.size());
    return 2 * N * (y_size - z1) + N * (z1 - z0) + z0;
  }
};

struct HuangBuild {
  HuangModel model;
  Gluing glue;
  FiniteAction action;
};

struct HnBuild {
  HnHuangModel model;
  Gluing glue;
  FiniteAction action;
};

/// N copies of Y glued along Z. Throws PreconditionError for invalid Z or
/// N < 4 (N < 2 when allow_small is set, for classical-only use).
HuangBuild huang_build(int y_size, std::vector<int> Z, int N, bool allow_small = false);

/// Y × [2N] with e_i = e_{i+N} over Z1 and all copies collapsed over Z0.
HnBuild hn_build(int y_size, std::vector<int> Z0, std::vector<int> Z1, int N);

struct InvarianceReport {
  bool pass = true;
  int models_checked = 0;
  std::string witness;
};

/// {f : f(z) ∈ Cξ for z ∈ Z} is invariant under the product coaction in each
/// model, via the class-constancy of α(f) over z.
InvarianceReport huang_invariance(const HuangBuild& b, const std::vector<MagicUnitary<Rational>>& models);

/// Same for A_{Z0,Z1} under the H_N^+ standard action.
InvarianceReport hn_invariance(const HnBuild& b, const std::vector<HyperoctahedralModel<Rational>>& models);

/// Equivalence of two actions through a point bijection (to[p] is the point
/// of `b` matching point p of `a`): all generators, and the quantum rules on
/// the supplied models when both have them. Empty string means verified.
std::string check_equivariance(const FiniteAction& a, const FiniteAction& b, const std::vector<int>& to,
                               const std::vector<MatrixModel<Rational>>& models);

struct HuangClassification {
  bool is_huang = false;
  std::string reason;
  std::vector<int> witness;  // offending orbit when not Huang
  HuangModel model;
  std::vector<int> to_action;  // glued model point -> point of the input
  bool quantum_verified = false;
};

/// Finds Y, Z and an equivariant bijection with the glued model; Y is the
/// list of orbits in order of their smallest point.
HuangClassification huang_classify(const FiniteAction& a, const std::vector<MagicUnitary<Rational>>& models = {});

struct HnClassification {
  bool ok = false;
  std::string reason;
  std::vector<int> witness;
  HnHuangModel model;
  std::vector<int> to_action;
  bool quantum_verified = false;
};

HnClassification hn_classify(const FiniteAction& a, const std::vector<HyperoctahedralModel<Rational>>& models = {});

/// Restriction to S_M ⊂ S_N (first M-1 transpositions); the quantum rule is
/// composed with the embedding u -> diag(u, 1, ..., 1).
FiniteAction restrict_action(const FiniteAction& a, int M);

/// Model of S_M^+ viewed as a model of S_N^+ through u -> diag(u, 1).
MatrixModel<Rational> extend_model(const MatrixModel<Rational>& m, int N);

/// Restricting a Huang action on N copies to S_{N-1}: each N-orbit splits
/// into an (N-1)-orbit and a fixed point. Compares the classifier on the
/// restriction with that prediction.
bool restriction_cross_check(const FiniteAction& a);

// Two-factor actions. A Z_2 model is a 1 x 1 MatrixModel holding ω.

/// Regular (faithful) model of C(Z_2): ω = diag(1, -1).
MatrixModel<Rational> z2_regular_model();
MatrixModel<Rational> z2_counit_model();

/// β(δ_x) = δ_x ⊗ (1+ω)/2 + δ_{g(x)} ⊗ (1-ω)/2 for an involution g of X.
CoactionRule<Rational> z2_action(const std::vector<int>& g);

/// Extension of an involution g of Y with g(Z) = Z to the glued space.
std::vector<int> extend_involution(const HuangBuild& b, const std::vector<int>& g);

using ProductRule = std::function<CoactionMap<Rational>(const MatrixModel<Rational>&, const MatrixModel<Rational>&)>;
using ModelPair = std::pair<MatrixModel<Rational>, MatrixModel<Rational>>;

struct CommutingReport {
  bool commuting = true;
  std::string witness;
};

/// (α ⊗ id)∘β = (id ⊗ Σ)∘(β ⊗ id)∘α on the basis δ_x, in each model pair
/// (first of G, second of H).
CommutingReport commuting_check(const CoactionRule<Rational>& alpha, const CoactionRule<Rational>& beta,
                                const std::vector<ModelPair>& models);

/// γ = (α ⊗ id)∘β. Throws PreconditionError if the check fails on `models`.
ProductRule product_build(const CoactionRule<Rational>& alpha, const CoactionRule<Rational>& beta,
                          const std::vector<ModelPair>& models);

/// α = (id ⊗ π_G)∘γ and β = (id ⊗ π_H)∘γ using the counit models.
std::pair<CoactionRule<Rational>, CoactionRule<Rational>> product_split(const ProductRule& gamma,
                                                                       const MatrixModel<Rational>& counit_g,
                                                                       const MatrixModel<Rational>& counit_h);

/// Coassociativity of a product rule: (γ ⊗ id)∘γ at ((m1,m2),(n1,n2)) equals
/// γ at (m1⊗n1, m2⊗n2) up to the middle-leg flip; plus *-hom and counit.
Report validate_product_action(const ProductRule& gamma, const std::vector<std::pair<ModelPair, ModelPair>>& pairs,
                               const ModelPair& counits);

/// Coefficientwise equality of two coaction maps.
bool same_coefficients(const CoactionMap<Rational>& a, const CoactionMap<Rational>& b);

}  // namespace qsym

#endif
