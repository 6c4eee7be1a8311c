#ifndef QSYM_GROUP_HPP
#define QSYM_GROUP_HPP

#include "qsym/errors.hpp"
#include "qsym/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qsym {

/// Permutation of {0..N-1} stored as its images.
using Perm = std::vector<int>;

Perm identity_perm(int N);
/// (p * q)(i) = p(q(i)).
Perm operator*(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);
bool is_permutation(const Perm& p);
/// Cycle notation on {1..N}, e.g. "(1 2)(3 4)"; "()" for the identity.
std::string cycle_string(const Perm& p);

/// Position of p among the permutations of its size in lexicographic order.
int lehmer_rank(const Perm& p);
Perm lehmer_unrank(int N, int rank);

Integer factorial(int n);
Integer binomial(int n, int k);

struct Subgroup {
  int N = 0;
  std::vector<Perm> generators;
  std::vector<int> elements;  // Lehmer ranks, sorted
  int order = 0;
  long index = 0;
  bool transitive = false;
  std::optional<int> stabilized_point;  // set when this is exactly Stab(p)
  int conjugacy_class = 0;

  bool contains(const Perm& p) const;
};

/// Every subgroup of S_N, N <= 6, found by extending conjugacy class
/// representatives one element at a time. Throws SizeLimitError for N > 6.
std::vector<Subgroup> subgroup_census(int N, std::optional<long> index_filter = std::nullopt);
int conjugacy_class_count(int N);

/// Closure, identity and inverses checked from the element list.
bool is_closed_subgroup(const Subgroup& s);

/// For a transitive subgroup: for each point i an element sending 0 to i.
std::vector<Perm> transitivity_certificate(const Subgroup& s);

struct IndexNReport {
  int N = 0;
  bool delegated = false;
  int count = 0;
  int point_stabilizers = 0;
  std::vector<Subgroup> exotic;
  bool all_point_stabilizers = false;
  std::string note;
};

/// Index-N subgroups of S_N: exhaustive for 2 <= N <= 6; for N >= 7 the
/// report is marked delegated. Throws PreconditionError for N < 2.
IndexNReport index_n_classification(int N);

struct CaseVerdict {
  std::string label;
  Integer index;
  bool integral_m = false;  // (index - 1) / (N - 1) is an integer
  bool feasible = false;    // integral with 2 <= m <= N-1
  std::string reason;
};

struct DegreeCheck {
  int N = 0;
  int m = 0;
  Integer n;
  bool feasible = false;
  std::string stage;  // "standard", "divisibility", "case analysis"
  std::string reason;
  std::vector<CaseVerdict> cases;
};

/// Can S_N act transitively on 1 + m(N-1) points? m = 1 always can; N <= 7
/// goes through divisibility of N!, escalating to the case analysis when
/// the index divides; N >= 8 uses the case analysis directly.
DegreeCheck transitive_degree_check(int N, int m);

/// The same question answered by the census: is there a subgroup of index
/// 1 + m(N-1)? N <= 6 only.
bool transitive_degree_by_census(int N, int m);

struct DivisibilityRow {
  int N = 0;
  Integer factorial;
  std::vector<int> n_values;  // 1 + m(N-1) for 2 <= m <= N-1
  std::vector<bool> divides;
};

std::vector<DivisibilityRow> divisibility_table(int from, int to);

struct BinomialRow {
  int M = 0;
  Integer half_binomial;        // C(2M, M) / 2
  bool first_link = false;      // 4^M / sqrt(4M) <= C(2M,M)/2
  bool degree_link = false;     // C(2M,M)/2 <= 1 + (2M-1)^2
  bool square_link = false;     // 1 + (2M-1)^2 <= 4M^2
  Integer aux_lhs;              // 16^M  (square of 4^M)
  Integer aux_rhs;              // 64 M^5 (square of 8 M^2 sqrt(M))
  std::string aux_status;       // "holds", "boundary", "fails"
  bool integral_m = false;      // C(2M,M)/2 = 1 + m(2M-1) for an integer m
  // With the factor 2 the first link needs: 4^M / (2 sqrt(4M)) <= C(2M,M)/2,
  // which leaves 4^M <= 16 M^2 sqrt(M) at the end of the chain.
  bool corrected_first_link = false;
  Integer corrected_aux_rhs;    // 256 M^5
  std::string corrected_aux_status;
};

std::vector<BinomialRow> binomial_inequality_scan(int from, int to);

struct HnCensus {
  int N = 0;
  int m = 0;
  bool feasible = false;
  long solutions = 0;
  std::vector<Perm> example_signs;
};

/// Transitive H_N actions on m+1 standard S_N blocks: all choices of g_1
/// (an involution of the (m+1)N points), with g_k obtained by conjugation,
/// checked against the semidirect relations. N <= 4, m <= 2.
HnCensus hn_transitive_census(int N, int m);

}  // namespace qsym

#endif
