#include "qsym/group.hpp"

#include "qsym/classical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace qsym {

Perm identity_perm(int N) {
  Perm p(static_cast<std::size_t>(N));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm operator*(const Perm& p, const Perm& q) {
  if (p.size() != q.size()) throw ShapeError("perm product: sizes differ");
  Perm out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = p[static_cast<std::size_t>(q[i])];
  return out;
}

Perm inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

std::string cycle_string(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      out += (j == i ? "" : " ") + std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

int lehmer_rank(const Perm& p) {
  const int n = static_cast<int>(p.size());
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += p[static_cast<std::size_t>(j)] < p[static_cast<std::size_t>(i)];
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

Perm lehmer_unrank(int N, int rank) {
  std::vector<int> digits(static_cast<std::size_t>(N));
  for (int i = N - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = rank % (N - i);
    rank /= N - i;
  }
  std::vector<int> pool = identity_perm(N);
  Perm out;
  for (int d : digits) {
    out.push_back(pool[static_cast<std::size_t>(d)]);
    pool.erase(pool.begin() + d);
  }
  return out;
}

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

bool Subgroup::contains(const Perm& p) const {
  return static_cast<int>(p.size()) == N && std::binary_search(elements.begin(), elements.end(), lehmer_rank(p));
}

namespace {

// S_N with a multiplication table on Lehmer ranks.
struct Symmetric {
  int N = 0;
  int order = 0;
  std::vector<Perm> perms;
  std::vector<std::uint16_t> table;  // table[a * order + b] = rank(perms[a] * perms[b])
  std::vector<std::uint16_t> inv;

  explicit Symmetric(int n) : N(n), order(static_cast<int>(factorial(n))) {
    for (int r = 0; r < order; ++r) perms.push_back(lehmer_unrank(N, r));
    table.resize(static_cast<std::size_t>(order) * static_cast<std::size_t>(order));
    inv.resize(static_cast<std::size_t>(order));
    for (int a = 0; a < order; ++a) {
      inv[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(lehmer_rank(inverse(perms[static_cast<std::size_t>(a)])));
      for (int b = 0; b < order; ++b)
        table[static_cast<std::size_t>(a) * static_cast<std::size_t>(order) + static_cast<std::size_t>(b)] =
            static_cast<std::uint16_t>(lehmer_rank(perms[static_cast<std::size_t>(a)] * perms[static_cast<std::size_t>(b)]));
    }
  }

  int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * static_cast<std::size_t>(order) + static_cast<std::size_t>(b)]; }
};

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : b) h = (h ^ w) * 1099511628211ull;
    return h;
  }
};

bool test(const Bits& b, int i) { return (b[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1; }
void set(Bits& b, int i) { b[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }

struct Raw {
  std::vector<int> gens;
  Bits bits;
  int order = 0;
  int cls = 0;
};

// <gens> as a bit set over ranks.
Bits closure(const Symmetric& S, const std::vector<int>& gens, int& order) {
  Bits b(static_cast<std::size_t>((S.order + 63) / 64), 0);
  std::vector<int> elems{0};
  set(b, 0);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (int g : gens) {
      const int x = S.mul(elems[i], g);
      if (!test(b, x)) {
        set(b, x);
        elems.push_back(x);
      }
    }
  order = static_cast<int>(elems.size());
  return b;
}

struct Census {
  std::vector<Subgroup> subgroups;
  int classes = 0;
};

Census build_census(int N) {
  const Symmetric S(N);
  std::vector<Raw> all;
  std::unordered_map<Bits, std::size_t, BitsHash> index;
  std::vector<std::size_t> reps;

  auto add_class = [&](const std::vector<int>& gens, const Bits& bits, int order) {
    const int cls = static_cast<int>(reps.size());
    reps.push_back(all.size());
    for (int c = 0; c < S.order; ++c) {
      Bits conj(bits.size(), 0);
      for (int x = 0; x < S.order; ++x)
        if (test(bits, x)) set(conj, S.mul(S.mul(c, x), S.inv[static_cast<std::size_t>(c)]));
      if (index.count(conj)) continue;
      std::vector<int> cg;
      for (int g : gens) cg.push_back(S.mul(S.mul(c, g), S.inv[static_cast<std::size_t>(c)]));
      index.emplace(conj, all.size());
      all.push_back({cg, conj, order, cls});
    }
  };

  {
    int order = 0;
    const Bits trivial = closure(S, {}, order);
    add_class({}, trivial, order);
  }
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const Raw rep = all[reps[r]];
    Bits done = rep.bits;
    for (int g = 0; g < S.order; ++g) {
      if (test(done, g)) continue;
      std::vector<int> gens = rep.gens;
      gens.push_back(g);
      int order = 0;
      const Bits k = closure(S, gens, order);
      // <H, hgh'> = <H, g>: skip the double coset
      for (int h = 0; h < S.order; ++h) {
        if (!test(rep.bits, h)) continue;
        for (int h2 = 0; h2 < S.order; ++h2)
          if (test(rep.bits, h2)) set(done, S.mul(S.mul(h, g), h2));
      }
      if (!index.count(k)) add_class(gens, k, order);
    }
  }

  Census out;
  out.classes = static_cast<int>(reps.size());
  const long group_order = S.order;
  for (const auto& r : all) {
    Subgroup s;
    s.N = N;
    for (int g : r.gens) s.generators.push_back(S.perms[static_cast<std::size_t>(g)]);
    for (int x = 0; x < S.order; ++x)
      if (test(r.bits, x)) s.elements.push_back(x);
    s.order = r.order;
    s.index = group_order / r.order;
    s.conjugacy_class = r.cls;
    std::vector<bool> reached(static_cast<std::size_t>(N), false);
    for (int x : s.elements) reached[static_cast<std::size_t>(S.perms[static_cast<std::size_t>(x)][0])] = true;
    s.transitive = std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
    if (s.index == N)
      for (int p = 0; p < N; ++p) {
        const bool fixes = std::all_of(s.elements.begin(), s.elements.end(),
                                       [&](int x) { return S.perms[static_cast<std::size_t>(x)][static_cast<std::size_t>(p)] == p; });
        if (fixes) s.stabilized_point = p;
      }
    out.subgroups.push_back(std::move(s));
  }
  std::sort(out.subgroups.begin(), out.subgroups.end(), [](const Subgroup& a, const Subgroup& b) {
    return std::tie(a.order, a.conjugacy_class, a.elements) < std::tie(b.order, b.conjugacy_class, b.elements);
  });
  return out;
}

const Census& census(int N) {
  if (N < 1 || N > 6) throw SizeLimitError("subgroup census is supported for 1 <= N <= 6");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Census>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[N];
  if (!slot) slot = std::make_unique<Census>(build_census(N));
  return *slot;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

CaseVerdict index_case(const std::string& label, const Integer& index, int N) {
  CaseVerdict v;
  v.label = label;
  v.index = index;
  const Integer num = index - 1;
  v.integral_m = num % (N - 1) == 0;
  if (v.integral_m) {
    const Integer m = num / (N - 1);
    v.feasible = m >= 2 && m <= N - 1;
    v.reason = "m = " + m.str() + (v.feasible ? " is admissible" : " is outside 2..N-1");
  } else {
    v.reason = "m = (" + index.str() + " - 1)/" + std::to_string(N - 1) + " is not an integer";
  }
  return v;
}

}  // namespace

std::vector<Subgroup> subgroup_census(int N, std::optional<long> index_filter) {
  const auto& c = census(N);
  if (!index_filter) return c.subgroups;
  std::vector<Subgroup> out;
  for (const auto& s : c.subgroups)
    if (s.index == *index_filter) out.push_back(s);
  return out;
}

int conjugacy_class_count(int N) { return census(N).classes; }

bool is_closed_subgroup(const Subgroup& s) {
  if (s.elements.empty() || s.elements.front() != 0) return false;
  for (int a : s.elements) {
    const Perm pa = lehmer_unrank(s.N, a);
    if (!s.contains(inverse(pa))) return false;
    for (int b : s.elements)
      if (!s.contains(pa * lehmer_unrank(s.N, b))) return false;
  }
  return static_cast<long>(s.order) * s.index == static_cast<long>(factorial(s.N)) &&
         static_cast<int>(s.elements.size()) == s.order;
}

std::vector<Perm> transitivity_certificate(const Subgroup& s) {
  std::vector<Perm> out(static_cast<std::size_t>(s.N));
  std::vector<bool> found(static_cast<std::size_t>(s.N), false);
  for (int x : s.elements) {
    const Perm p = lehmer_unrank(s.N, x);
    const auto i = static_cast<std::size_t>(p[0]);
    if (!found[i]) {
      found[i] = true;
      out[i] = p;
    }
  }
  if (std::find(found.begin(), found.end(), false) != found.end()) throw PreconditionError("subgroup is not transitive");
  return out;
}

IndexNReport index_n_classification(int N) {
  if (N < 2) throw PreconditionError("index_n_classification: N must be at least 2");
  IndexNReport r;
  r.N = N;
  if (N > 6) {
    r.delegated = true;
    r.note = "beyond exhaustive range; N != 6 so every automorphism of S_N is inner";
    return r;
  }
  for (const auto& s : subgroup_census(N, N)) {
    ++r.count;
    if (s.stabilized_point)
      ++r.point_stabilizers;
    else
      r.exotic.push_back(s);
  }
  r.all_point_stabilizers = r.exotic.empty();
  r.note = r.all_point_stabilizers ? "every index-N subgroup is a point stabilizer"
                                   : std::to_string(r.exotic.size()) + " index-N subgroups fix no point";
  return r;
}

DegreeCheck transitive_degree_check(int N, int m) {
  if (N < 2 || m < 1 || m > N - 1) throw PreconditionError("transitive_degree_check: need N >= 2 and 1 <= m <= N-1");
  DegreeCheck d;
  d.N = N;
  d.m = m;
  d.n = 1 + Integer(m) * (N - 1);
  if (m == 1) {
    d.feasible = true;
    d.stage = "standard";
    d.reason = "the standard action on N points";
    return d;
  }
  if (N <= 7) {
    const Integer f = factorial(N);
    if (f % d.n != 0) {
      d.stage = "divisibility";
      d.reason = d.n.str() + " does not divide " + f.str();
      return d;
    }
  }
  d.stage = "case analysis";
  if (!(d.n < binomial(N, 3)))
    throw PreconditionError("transitive_degree_check: index is not below C(N,3), case analysis does not apply");
  const Integer n = N;
  d.cases.push_back(index_case("S_{N-1}", n, N));
  d.cases.push_back(index_case("A_{N-1}", 2 * n, N));
  d.cases.push_back(index_case("id x A_{N-2}", 2 * n * (N - 1), N));
  d.cases.push_back(index_case("id x S_{N-2}", n * (N - 1), N));
  d.cases.push_back(index_case("S_2 x A_{N-2}", n * (N - 1), N));
  d.cases.push_back(index_case("S_2 x S_{N-2}", n * (N - 1) / 2, N));
  d.cases.push_back(index_case("S_{N-2}", n * (N - 1), N));
  if (N % 2 == 0) {
    const int M = N / 2;
    auto v = index_case("half binomial C(N,N/2)/2", binomial(N, M) / 2, N);
    v.feasible = v.feasible && v.index == d.n;
    if (v.index != d.n) v.reason += "; index " + v.index.str() + " != " + d.n.str();
    const auto row = binomial_inequality_scan(M, M).front();
    v.reason += "; 4^M <= 8M^2 sqrt(M) " + row.aux_status;
    d.cases.push_back(v);
  }
  if (N == 8) {
    CaseVerdict v;
    v.label = "exceptional index 30";
    v.index = 30;
    const long target = 29;
    v.integral_m = target % (N - 1) == 0;
    v.feasible = v.integral_m && d.n == 30;
    v.reason = std::string("m(N-1) = 29 and 29 is ") + (is_prime(target) ? "prime" : "composite") +
               ", so N-1 in {1, 29}, impossible for N = 8";
    d.cases.push_back(v);
  }
  d.feasible = false;
  for (const auto& c : d.cases)
    if (c.feasible && c.index == d.n) d.feasible = true;
  d.reason = d.feasible ? "a candidate subgroup has index n" : "no candidate subgroup has index " + d.n.str();
  return d;
}

bool transitive_degree_by_census(int N, int m) {
  const long n = 1 + static_cast<long>(m) * (N - 1);
  return !subgroup_census(N, n).empty();
}

std::vector<DivisibilityRow> divisibility_table(int from, int to) {
  std::vector<DivisibilityRow> out;
  for (int N = from; N <= to; ++N) {
    DivisibilityRow r;
    r.N = N;
    r.factorial = factorial(N);
    for (int m = 2; m <= N - 1; ++m) {
      const int n = 1 + m * (N - 1);
      r.n_values.push_back(n);
      r.divides.push_back(r.factorial % n == 0);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BinomialRow> binomial_inequality_scan(int from, int to) {
  if (from < 2) throw PreconditionError("binomial_inequality_scan: M must be at least 2");
  std::vector<BinomialRow> out;
  for (int M = from; M <= to; ++M) {
    BinomialRow r;
    r.M = M;
    r.half_binomial = binomial(2 * M, M) / 2;
    const Integer pow16 = boost::multiprecision::pow(Integer(16), static_cast<unsigned>(M));
    // (4^M / sqrt(4M))^2 <= h^2  <=>  16^M <= 4M h^2
    r.first_link = pow16 <= 4 * Integer(M) * r.half_binomial * r.half_binomial;
    const Integer sq = Integer(2 * M - 1) * (2 * M - 1);
    r.degree_link = r.half_binomial <= 1 + sq;
    r.square_link = 1 + sq <= 4 * Integer(M) * M;
    r.aux_lhs = pow16;
    r.aux_rhs = 64 * boost::multiprecision::pow(Integer(M), 5);
    r.aux_status = r.aux_lhs < r.aux_rhs ? "holds" : r.aux_lhs == r.aux_rhs ? "boundary" : "fails";
    r.integral_m = (r.half_binomial - 1) % (2 * M - 1) == 0;
    r.corrected_first_link = pow16 <= 16 * Integer(M) * r.half_binomial * r.half_binomial;
    r.corrected_aux_rhs = 256 * boost::multiprecision::pow(Integer(M), 5);
    r.corrected_aux_status = pow16 < r.corrected_aux_rhs ? "holds" : pow16 == r.corrected_aux_rhs ? "boundary" : "fails";
    out.push_back(std::move(r));
  }
  return out;
}

HnCensus hn_transitive_census(int N, int m) {
  if (N < 1 || N > 4 || m < 0 || m > 2) throw SizeLimitError("hn_transitive_census: need N <= 4 and 0 <= m <= 2");
  const int size = (m + 1) * N;
  FiniteAction a;
  a.group = GroupTag::HN;
  a.N = N;
  a.size = size;
  auto block_transposition = [&](int i, int j) {
    Perm p = identity_perm(size);
    for (int b = 0; b <= m; ++b) std::swap(p[static_cast<std::size_t>(b * N + i)], p[static_cast<std::size_t>(b * N + j)]);
    return p;
  };
  for (int i = 0; i + 1 < N; ++i) a.transpositions.push_back(block_transposition(i, i + 1));

  HnCensus out;
  out.N = N;
  out.m = m;
  Perm g = identity_perm(size);
  std::vector<bool> used(static_cast<std::size_t>(size), false);
  std::function<void(int)> involutions = [&](int i) {
    while (i < size && used[static_cast<std::size_t>(i)]) ++i;
    if (i == size) {
      a.signs.clear();
      a.signs.push_back(g);
      for (int k = 1; k < N; ++k) {
        const Perm t = block_transposition(0, k);
        a.signs.push_back(t * g * t);
      }
      try {
        validate_action(a);
      } catch (const ModelError&) {
        return;
      }
      if (orbits(a).size() != 1) return;
      if (out.solutions++ == 0) out.example_signs = a.signs;
      return;
    }
    used[static_cast<std::size_t>(i)] = true;
    g[static_cast<std::size_t>(i)] = i;
    involutions(i + 1);
    for (int j = i + 1; j < size; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      used[static_cast<std::size_t>(j)] = true;
      g[static_cast<std::size_t>(i)] = j;
      g[static_cast<std::size_t>(j)] = i;
      involutions(i + 1);
      g[static_cast<std::size_t>(j)] = j;
      used[static_cast<std::size_t>(j)] = false;
    }
    g[static_cast<std::size_t>(i)] = i;
    used[static_cast<std::size_t>(i)] = false;
  };
  involutions(0);
  out.feasible = out.solutions > 0;
  return out;
}

}  // namespace qsym
