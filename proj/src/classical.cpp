#include "qsym/classical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace qsym {

namespace {

using Perm = std::vector<int>;

Perm transposition(int n, int a) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::swap(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(a + 1)]);
  return p;
}

Perm compose(const Perm& outer, const Perm& inner) {
  Perm out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

bool is_bijection(const Perm& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int x : p) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

Perm power(const Perm& p, int k) {
  Perm out(p.size());
  std::iota(out.begin(), out.end(), 0);
  for (int i = 0; i < k; ++i) out = compose(p, out);
  return out;
}

std::string perm_string(const Perm& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

int find(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

std::vector<std::vector<int>> components(int n, const std::vector<Perm>& gens) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& g : gens)
    for (int x = 0; x < n; ++x) {
      const int a = find(parent, x), b = find(parent, g[static_cast<std::size_t>(x)]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::map<int, std::vector<int>> by_root;
  for (int x = 0; x < n; ++x) by_root[find(parent, x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [r, c] : by_root) out.push_back(std::move(c));
  std::sort(out.begin(), out.end());
  return out;
}

// Permutation of the cover pushed to the classes; throws if some class is
// not mapped into a single class.
Perm descend_permutation(const Perm& cover, const Gluing& g) {
  Perm out(g.classes.size());
  for (std::size_t c = 0; c < g.classes.size(); ++c) {
    const int target = g.class_of[static_cast<std::size_t>(cover[static_cast<std::size_t>(g.classes[c].front())])];
    for (int p : g.classes[c])
      if (g.class_of[static_cast<std::size_t>(cover[static_cast<std::size_t>(p)])] != target)
        throw ModelError("gluing is not compatible with the generator " + perm_string(cover));
    out[c] = target;
  }
  return out;
}

// Labeling φ of an orbit with φ(g x) = g φ(x) for every generator; the
// first consistent choice for the smallest point wins.
std::optional<std::vector<int>> label_orbit(const std::vector<int>& orbit, const std::vector<Perm>& gens,
                                            const std::vector<Perm>& label_gens, int labels) {
  if (static_cast<int>(orbit.size()) != labels) return std::nullopt;
  for (int l0 = 0; l0 < labels; ++l0) {
    std::map<int, int> lab{{orbit.front(), l0}};
    std::queue<int> todo;
    todo.push(orbit.front());
    bool ok = true;
    while (ok && !todo.empty()) {
      const int x = todo.front();
      todo.pop();
      for (std::size_t k = 0; k < gens.size() && ok; ++k) {
        const int y = gens[k][static_cast<std::size_t>(x)];
        const int l = label_gens[k][static_cast<std::size_t>(lab.at(x))];
        auto it = lab.find(y);
        if (it == lab.end()) {
          lab.emplace(y, l);
          todo.push(y);
        } else if (it->second != l) {
          ok = false;
        }
      }
    }
    if (!ok || static_cast<int>(lab.size()) != labels) continue;
    std::vector<int> point_of(static_cast<std::size_t>(labels), -1);
    for (const auto& [x, l] : lab) {
      if (point_of[static_cast<std::size_t>(l)] != -1) {
        ok = false;
        break;
      }
      point_of[static_cast<std::size_t>(l)] = x;
    }
    if (ok) return point_of;
  }
  return std::nullopt;
}

void check_subset(const std::vector<int>& s, int n, const char* what) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= n) throw PreconditionError(std::string(what) + ": point out of range");
    if (i > 0 && s[i] <= s[i - 1]) throw PreconditionError(std::string(what) + ": must be sorted without repeats");
  }
}

bool contains(const std::vector<int>& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

MatrixModel<Rational> scalar_generator_model(GroupTag group, int N, std::size_t k) {
  Perm id(static_cast<std::size_t>(N));
  std::iota(id.begin(), id.end(), 0);
  if (k + 1 < static_cast<std::size_t>(N)) {
    const Perm s = transposition(N, static_cast<int>(k));
    if (group == GroupTag::SN) return perm_model<Rational>(s);
    return signed_perm_model<Rational>(s, std::vector<int>(static_cast<std::size_t>(N), 1));
  }
  std::vector<int> eps(static_cast<std::size_t>(N), 1);
  eps[k - static_cast<std::size_t>(N - 1)] = -1;
  return signed_perm_model<Rational>(id, eps);
}

std::vector<Perm> all_permutations(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Moves the middle legs: (d1 ⊗ e1 ⊗ d2 ⊗ e2) -> (d1 ⊗ d2 ⊗ e1 ⊗ e2).
MatQ swap_middle(const MatQ& m, int d1, int e1, int d2, int e2) {
  const int n = d1 * e1 * d2 * e2;
  std::vector<int> to(static_cast<std::size_t>(n));
  for (int a = 0; a < d1; ++a)
    for (int c = 0; c < e1; ++c)
      for (int b = 0; b < d2; ++b)
        for (int e = 0; e < e2; ++e) to[static_cast<std::size_t>(((a * e1 + c) * d2 + b) * e2 + e)] = ((a * d2 + b) * e1 + c) * e2 + e;
  MatQ out(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) out(to[static_cast<std::size_t>(r)], to[static_cast<std::size_t>(s)]) = m(r, s);
  return out;
}

}  // namespace

std::string to_string(GroupTag g) { return g == GroupTag::SN ? "SN" : "HN"; }

GroupTag group_from_string(const std::string& s) {
  if (s == "SN") return GroupTag::SN;
  if (s == "HN") return GroupTag::HN;
  throw PreconditionError("unknown group tag: " + s);
}

std::vector<std::vector<int>> label_generators(GroupTag group, int N) {
  std::vector<Perm> out;
  if (group == GroupTag::SN) {
    for (int a = 0; a + 1 < N; ++a) out.push_back(transposition(N, a));
    return out;
  }
  for (int a = 0; a + 1 < N; ++a) {
    Perm p(static_cast<std::size_t>(2 * N));
    const Perm s = transposition(N, a);
    for (int i = 0; i < 2 * N; ++i) p[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i % N)] + (i >= N ? N : 0);
    out.push_back(p);
  }
  for (int k = 0; k < N; ++k) {
    Perm p(static_cast<std::size_t>(2 * N));
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(k + N)]);
    out.push_back(p);
  }
  return out;
}

std::vector<std::vector<int>> generators(const FiniteAction& a) {
  auto out = a.transpositions;
  out.insert(out.end(), a.signs.begin(), a.signs.end());
  return out;
}

void validate_action(const FiniteAction& a) {
  if (a.N < 1) throw ModelError("action: N must be positive");
  if (static_cast<int>(a.transpositions.size()) != a.N - 1) throw ModelError("action: need N-1 transposition images");
  if (a.group == GroupTag::SN && !a.signs.empty()) throw ModelError("action: S_N action with sign generators");
  if (a.group == GroupTag::HN && static_cast<int>(a.signs.size()) != a.N) throw ModelError("action: need N sign images");
  for (const auto& g : generators(a))
    if (!is_bijection(g, a.size)) throw ModelError("action: generator image is not a bijection " + perm_string(g));
  const auto& s = a.transpositions;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_identity(power(s[i], 2))) throw ModelError("action: s_" + std::to_string(i) + " is not an involution");
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const int order = j == i + 1 ? 3 : 2;
      if (!is_identity(power(compose(s[i], s[j]), order)))
        throw ModelError("action: braid relation fails for s_" + std::to_string(i) + ", s_" + std::to_string(j));
    }
  }
  if (a.group == GroupTag::HN) {
    const auto& g = a.signs;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!is_identity(power(g[k], 2))) throw ModelError("action: g_" + std::to_string(k) + " is not an involution");
      for (std::size_t l = k + 1; l < g.size(); ++l)
        if (compose(g[k], g[l]) != compose(g[l], g[k])) throw ModelError("action: sign flips do not commute");
      for (std::size_t i = 0; i < s.size(); ++i) {
        const int ki = static_cast<int>(k);
        const int target = ki == static_cast<int>(i) ? ki + 1 : ki == static_cast<int>(i) + 1 ? ki - 1 : ki;
        if (compose(compose(s[i], g[k]), s[i]) != g[static_cast<std::size_t>(target)])
          throw ModelError("action: s g_k s != g_{s(k)} for s_" + std::to_string(i) + ", k = " + std::to_string(k));
      }
    }
  }
}

std::string check_quantum_restriction(const FiniteAction& a) {
  if (!a.has_quantum()) return {};
  const auto gens = generators(a);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto q = a.quantum(scalar_generator_model(a.group, a.N, k));
    if (q.n != a.size || q.d != 1) return "generator " + std::to_string(k) + ": coefficient shape";
    for (int j = 0; j < a.size; ++j)
      for (int i = 0; i < a.size; ++i) {
        const Rational expect = gens[k][static_cast<std::size_t>(i)] == j ? 1 : 0;
        if (q.coeff(j, i)(0, 0) != expect)
          return "generator " + std::to_string(k) + " at (" + std::to_string(j) + "," + std::to_string(i) + ")";
      }
  }
  return {};
}

std::vector<std::vector<int>> orbits(const FiniteAction& a) { return components(a.size, generators(a)); }

std::vector<int> fixed_points(const FiniteAction& a) {
  std::vector<int> out;
  for (const auto& o : orbits(a))
    if (o.size() == 1) out.push_back(o.front());
  return out;
}

QuantumOrbits quantum_orbits(const FiniteAction& a, const std::vector<MatrixModel<Rational>>& models) {
  if (!a.has_quantum()) throw PreconditionError("quantum_orbits: action has no quantum coefficients");
  if (models.empty()) throw PreconditionError("quantum_orbits: no models supplied");
  const int n = a.size;
  std::vector<std::vector<bool>> rel(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (const auto& m : models) {
    const auto q = a.quantum(m);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (!q.coeff(y, x).isZero()) rel[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = true;
  }
  auto r = [&](int x, int y) { return rel[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; };
  for (int x = 0; x < n; ++x) {
    if (!r(x, x)) throw ModelError("quantum support is not reflexive at point " + std::to_string(x));
    for (int y = 0; y < n; ++y) {
      if (r(x, y) != r(y, x)) throw ModelError("quantum support is not symmetric at " + detail::at(x, y));
      if (!r(x, y)) continue;
      for (int z = 0; z < n; ++z)
        if (r(y, z) && !r(x, z)) throw ModelError("quantum support is not transitive at " + detail::at(x, y, z));
    }
  }
  QuantumOrbits out;
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int x = 0; x < n; ++x) {
    if (done[static_cast<std::size_t>(x)]) continue;
    std::vector<int> c;
    for (int y = x; y < n; ++y)
      if (r(x, y)) {
        c.push_back(y);
        done[static_cast<std::size_t>(y)] = true;
      }
    out.classes.push_back(std::move(c));
  }
  const auto classical = orbits(a);
  out.matches_classical = out.classes == classical;
  std::vector<int> orbit_of(static_cast<std::size_t>(n));
  for (std::size_t o = 0; o < classical.size(); ++o)
    for (int x : classical[o]) orbit_of[static_cast<std::size_t>(x)] = static_cast<int>(o);
  out.refines_classical = std::all_of(out.classes.begin(), out.classes.end(), [&](const std::vector<int>& c) {
    return std::all_of(c.begin(), c.end(), [&](int x) { return orbit_of[static_cast<std::size_t>(x)] == orbit_of[static_cast<std::size_t>(c.front())]; });
  });
  return out;
}

MatrixModel<Rational> regular_model(GroupTag group, int N) {
  if (N < 1 || (group == GroupTag::SN && N > 5) || (group == GroupTag::HN && N > 3))
    throw SizeLimitError("regular_model: supported for S_N with N <= 5 and H_N with N <= 3");
  std::vector<MatrixModel<Rational>> parts;
  for (const auto& s : all_permutations(N)) {
    if (group == GroupTag::SN) {
      parts.push_back(perm_model<Rational>(s));
      continue;
    }
    for (int mask = 0; mask < (1 << N); ++mask) {
      std::vector<int> eps(static_cast<std::size_t>(N));
      for (int j = 0; j < N; ++j) eps[static_cast<std::size_t>(j)] = (mask >> j) & 1 ? -1 : 1;
      parts.push_back(signed_perm_model<Rational>(s, eps));
    }
  }
  const int d = static_cast<int>(parts.size());
  MatrixModel<Rational> out(N, d);
  for (int t = 0; t < d; ++t)
    for (std::size_t k = 0; k < out.entries.size(); ++k) out.entries[k](t, t) = parts[static_cast<std::size_t>(t)].entries[k](0, 0);
  return out;
}

std::vector<GroupElement> enumerate_group(const FiniteAction& a) {
  if ((a.group == GroupTag::SN && a.N > 7) || (a.group == GroupTag::HN && a.N > 4))
    throw SizeLimitError("enumerate_group: supported for S_N with N <= 7 and H_N with N <= 4");
  const auto lg = label_generators(a.group, a.N);
  const auto pg = generators(a);
  const int labels = a.group == GroupTag::SN ? a.N : 2 * a.N;
  Perm id_l(static_cast<std::size_t>(labels)), id_p(static_cast<std::size_t>(a.size));
  std::iota(id_l.begin(), id_l.end(), 0);
  std::iota(id_p.begin(), id_p.end(), 0);
  std::vector<GroupElement> out{{id_l, id_p}};
  std::map<Perm, std::size_t> index{{id_l, 0}};
  for (std::size_t e = 0; e < out.size(); ++e)
    for (std::size_t k = 0; k < lg.size(); ++k) {
      Perm l = compose(lg[k], out[e].on_labels), p = compose(pg[k], out[e].on_points);
      auto it = index.find(l);
      if (it == index.end()) {
        index.emplace(l, out.size());
        out.push_back({std::move(l), std::move(p)});
      } else if (out[it->second].on_points != p) {
        throw ModelError("enumerate_group: generator images do not define a homomorphism");
      }
    }
  return out;
}

IsotypicTable isotypic_decomposition(const FiniteAction& a) {
  const auto elements = enumerate_group(a);
  const int N = a.N;
  struct Char {
    std::string name;
    int dim;
    std::function<int(const Perm&)> chi;
  };
  std::vector<Char> chars;
  chars.push_back({"trivial", 1, [](const Perm&) { return 1; }});
  if (a.group == GroupTag::SN) {
    if (N >= 2)
      chars.push_back({"standard", N - 1, [N](const Perm& l) {
                         int f = 0;
                         for (int i = 0; i < N; ++i) f += l[static_cast<std::size_t>(i)] == i;
                         return f - 1;
                       }});
  } else {
    chars.push_back({"signed", N, [N](const Perm& l) {
                       int t = 0;
                       for (int i = 0; i < N; ++i) t += l[static_cast<std::size_t>(i)] == i ? 1 : l[static_cast<std::size_t>(i)] == i + N ? -1 : 0;
                       return t;
                     }});
    if (N >= 2)
      chars.push_back({"standard", N - 1, [N](const Perm& l) {
                         int f = 0;
                         for (int i = 0; i < N; ++i) f += l[static_cast<std::size_t>(i)] % N == i;
                         return f - 1;
                       }});
  }
  IsotypicTable t;
  int used = 0;
  for (const auto& c : chars) {
    long long sum = 0;
    for (const auto& g : elements) {
      int fix = 0;
      for (int x = 0; x < a.size; ++x) fix += g.on_points[static_cast<std::size_t>(x)] == x;
      sum += static_cast<long long>(c.chi(g.on_labels)) * fix;
    }
    const auto order = static_cast<long long>(elements.size());
    if (sum % order != 0) throw ModelError("isotypic_decomposition: non-integral multiplicity for " + c.name);
    const int m = static_cast<int>(sum / order);
    t.rows.push_back({c.name, c.dim, m});
    used += m * c.dim;
  }
  t.remainder = a.size - used;
  t.ergodic = t.rows.front().multiplicity == 1;
  return t;
}

VecQ conditional_expectation(const FiniteAction& a, const VecQ& f) {
  if (f.size() != a.size) throw ShapeError("conditional_expectation: function length differs from |X|");
  const auto elements = enumerate_group(a);
  VecQ out = VecQ::Zero(a.size);
  for (const auto& g : elements)
    for (int x = 0; x < a.size; ++x) out(x) += f(g.on_points[static_cast<std::size_t>(x)]);
  return out / Rational(static_cast<long>(elements.size()));
}

Gluing Gluing::from_classes(int cover_size, std::vector<std::vector<int>> classes) {
  Gluing g;
  g.cover_size = cover_size;
  g.class_of.assign(static_cast<std::size_t>(cover_size), -1);
  for (auto& c : classes) std::sort(c.begin(), c.end());
  std::sort(classes.begin(), classes.end());
  for (std::size_t k = 0; k < classes.size(); ++k)
    for (int p : classes[k]) {
      if (p < 0 || p >= cover_size || g.class_of[static_cast<std::size_t>(p)] != -1)
        throw PreconditionError("gluing: classes must partition the cover");
      g.class_of[static_cast<std::size_t>(p)] = static_cast<int>(k);
    }
  if (std::find(g.class_of.begin(), g.class_of.end(), -1) != g.class_of.end())
    throw PreconditionError("gluing: classes must cover every point");
  g.classes = std::move(classes);
  return g;
}

Descent descend(const CoactionMap<Rational>& cover, const Gluing& g) {
  if (cover.n != g.cover_size) throw ShapeError("descend: cover size differs");
  const int m = static_cast<int>(g.classes.size());
  Descent out;
  out.quotient = CoactionMap<Rational>(m, cover.d);
  for (int c = 0; c < m; ++c) {
    // α(1_C) at each cover point
    std::vector<MatQ> at(static_cast<std::size_t>(cover.n), MatQ::Zero(cover.d, cover.d));
    for (int p = 0; p < cover.n; ++p)
      for (int x : g.classes[static_cast<std::size_t>(c)]) at[static_cast<std::size_t>(p)] += cover.coeff(p, x);
    for (int e = 0; e < m; ++e) {
      const auto& cls = g.classes[static_cast<std::size_t>(e)];
      for (int p : cls)
        if (at[static_cast<std::size_t>(p)] != at[static_cast<std::size_t>(cls.front())] && out.invariant) {
          out.invariant = false;
          out.witness = "alpha(1_C" + std::to_string(c) + ") differs at cover points " + std::to_string(cls.front()) + " and " +
                        std::to_string(p);
        }
      out.quotient.coeff(e, c) = at[static_cast<std::size_t>(cls.front())];
    }
  }
  return out;
}

CoactionMap<Rational> product_cover(const CoactionMap<Rational>& base, int y_size) {
  const int n = base.n;
  CoactionMap<Rational> out(y_size * n, base.d);
  for (int y = 0; y < y_size; ++y)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) out.coeff(y * n + j, y * n + i) = base.coeff(j, i);
  return out;
}

namespace {

std::vector<std::string> class_names(const Gluing& g, int copies) {
  std::vector<std::string> names;
  for (const auto& c : g.classes) {
    const int y = c.front() / copies, i = c.front() % copies;
    names.push_back(c.size() == 1 ? "y" + std::to_string(y) + "." + std::to_string(i)
                                  : c.size() == static_cast<std::size_t>(copies) ? "z" + std::to_string(y)
                                                                                 : "y" + std::to_string(y) + "." + std::to_string(i) + "~");
  }
  return names;
}

FiniteAction glued_action(GroupTag group, int N, int y_size, const Gluing& glue) {
  const int copies = group == GroupTag::SN ? N : 2 * N;
  FiniteAction a;
  a.group = group;
  a.N = N;
  a.size = static_cast<int>(glue.classes.size());
  a.names = class_names(glue, copies);
  const auto lg = label_generators(group, N);
  for (std::size_t k = 0; k < lg.size(); ++k) {
    Perm cover(static_cast<std::size_t>(y_size * copies));
    for (int y = 0; y < y_size; ++y)
      for (int i = 0; i < copies; ++i) cover[static_cast<std::size_t>(y * copies + i)] = y * copies + lg[k][static_cast<std::size_t>(i)];
    const Perm p = descend_permutation(cover, glue);
    (static_cast<int>(k) < N - 1 ? a.transpositions : a.signs).push_back(p);
  }
  return a;
}

}  // namespace

HuangBuild huang_build(int y_size, std::vector<int> Z, int N, bool allow_small) {
  if (y_size < 0) throw PreconditionError("huang_build: |Y| must be non-negative");
  if (N < (allow_small ? 1 : 4)) throw PreconditionError("huang_build: N must be at least 4");
  check_subset(Z, y_size, "huang_build: Z");
  std::vector<std::vector<int>> classes;
  for (int y = 0; y < y_size; ++y) {
    if (contains(Z, y)) {
      std::vector<int> c;
      for (int i = 0; i < N; ++i) c.push_back(y * N + i);
      classes.push_back(c);
    } else {
      for (int i = 0; i < N; ++i) classes.push_back({y * N + i});
    }
  }
  HuangBuild b;
  b.model = {y_size, Z, N};
  b.glue = Gluing::from_classes(y_size * N, std::move(classes));
  b.action = glued_action(GroupTag::SN, N, y_size, b.glue);
  const Gluing glue = b.glue;
  b.action.quantum = [glue, y_size](const MatrixModel<Rational>& m) {
    auto d = descend(product_cover(standard_action(m), y_size), glue);
    if (!d.invariant) throw ModelError("huang action: " + d.witness);
    return d.quotient;
  };
  return b;
}

HnBuild hn_build(int y_size, std::vector<int> Z0, std::vector<int> Z1, int N) {
  if (y_size < 0) throw PreconditionError("hn_build: |Y| must be non-negative");
  if (N < 1) throw PreconditionError("hn_build: N must be positive");
  check_subset(Z0, y_size, "hn_build: Z0");
  check_subset(Z1, y_size, "hn_build: Z1");
  if (!std::includes(Z1.begin(), Z1.end(), Z0.begin(), Z0.end())) throw PreconditionError("hn_build: Z0 must lie in Z1");
  const int c = 2 * N;
  std::vector<std::vector<int>> classes;
  for (int y = 0; y < y_size; ++y) {
    if (contains(Z0, y)) {
      std::vector<int> all;
      for (int i = 0; i < c; ++i) all.push_back(y * c + i);
      classes.push_back(all);
    } else if (contains(Z1, y)) {
      for (int i = 0; i < N; ++i) classes.push_back({y * c + i, y * c + i + N});
    } else {
      for (int i = 0; i < c; ++i) classes.push_back({y * c + i});
    }
  }
  HnBuild b;
  b.model = {y_size, Z0, Z1, N};
  b.glue = Gluing::from_classes(y_size * c, std::move(classes));
  b.action = glued_action(GroupTag::HN, N, y_size, b.glue);
  const Gluing glue = b.glue;
  b.action.quantum = [glue, y_size](const MatrixModel<Rational>& m) {
    auto d = descend(product_cover(hn_standard_action(m), y_size), glue);
    if (!d.invariant) throw ModelError("hyperoctahedral action: " + d.witness);
    return d.quotient;
  };
  return b;
}

InvarianceReport huang_invariance(const HuangBuild& b, const std::vector<MagicUnitary<Rational>>& models) {
  InvarianceReport r;
  for (const auto& m : models) {
    if (m.N != b.model.N) throw ShapeError("huang_invariance: model size differs from N");
    const auto d = descend(product_cover(standard_action(m), b.model.y_size), b.glue);
    ++r.models_checked;
    if (!d.invariant && r.pass) {
      r.pass = false;
      r.witness = "model " + std::to_string(r.models_checked - 1) + ": " + d.witness;
    }
  }
  return r;
}

InvarianceReport hn_invariance(const HnBuild& b, const std::vector<HyperoctahedralModel<Rational>>& models) {
  InvarianceReport r;
  for (const auto& m : models) {
    if (m.N != b.model.N) throw ShapeError("hn_invariance: model size differs from N");
    const auto d = descend(product_cover(hn_standard_action(m), b.model.y_size), b.glue);
    ++r.models_checked;
    if (!d.invariant && r.pass) {
      r.pass = false;
      r.witness = "model " + std::to_string(r.models_checked - 1) + ": " + d.witness;
    }
  }
  return r;
}

std::string check_equivariance(const FiniteAction& a, const FiniteAction& b, const std::vector<int>& to,
                               const std::vector<MatrixModel<Rational>>& models) {
  if (a.size != b.size || a.N != b.N || a.group != b.group) return "actions differ in size or group";
  if (!is_bijection(to, a.size)) return "map is not a bijection";
  const auto ga = generators(a), gb = generators(b);
  for (std::size_t k = 0; k < ga.size(); ++k)
    for (int p = 0; p < a.size; ++p)
      if (to[static_cast<std::size_t>(ga[k][static_cast<std::size_t>(p)])] != gb[k][static_cast<std::size_t>(to[static_cast<std::size_t>(p)])])
        return "generator " + std::to_string(k) + " at point " + std::to_string(p);
  if (!a.has_quantum() || !b.has_quantum()) return {};
  for (std::size_t m = 0; m < models.size(); ++m) {
    const auto qa = a.quantum(models[m]), qb = b.quantum(models[m]);
    for (int j = 0; j < a.size; ++j)
      for (int i = 0; i < a.size; ++i)
        if (qa.coeff(j, i) != qb.coeff(to[static_cast<std::size_t>(j)], to[static_cast<std::size_t>(i)]))
          return "model " + std::to_string(m) + " coefficient " + detail::at(j, i);
  }
  return {};
}

HuangClassification huang_classify(const FiniteAction& a, const std::vector<MagicUnitary<Rational>>& models) {
  if (a.group != GroupTag::SN) throw PreconditionError("huang_classify: expects an S_N action");
  validate_action(a);
  HuangClassification out;
  const auto orb = orbits(a);
  const auto lg = label_generators(GroupTag::SN, a.N);
  std::vector<std::vector<int>> labeled(orb.size());
  std::vector<int> Z;
  for (std::size_t o = 0; o < orb.size(); ++o) {
    if (orb[o].size() == 1) {
      Z.push_back(static_cast<int>(o));
      continue;
    }
    if (static_cast<int>(orb[o].size()) != a.N) {
      out.reason = "orbit of size " + std::to_string(orb[o].size()) + ", expected 1 or " + std::to_string(a.N);
      out.witness = orb[o];
      return out;
    }
    auto lab = label_orbit(orb[o], a.transpositions, lg, a.N);
    if (!lab) {
      out.reason = "orbit of size N on which S_N does not act through a point stabilizer";
      out.witness = orb[o];
      return out;
    }
    labeled[o] = *lab;
  }
  const int y_size = static_cast<int>(orb.size());
  const auto built = huang_build(y_size, Z, a.N, true);
  out.model = built.model;
  out.to_action.resize(built.glue.classes.size());
  for (std::size_t c = 0; c < built.glue.classes.size(); ++c) {
    const int p = built.glue.classes[c].front();
    const auto y = static_cast<std::size_t>(p / a.N);
    out.to_action[c] = orb[y].size() == 1 ? orb[y].front() : labeled[y][static_cast<std::size_t>(p % a.N)];
  }
  const bool quantum = a.has_quantum() && !models.empty();
  const std::string err = check_equivariance(built.action, a, out.to_action, quantum ? models : std::vector<MatrixModel<Rational>>{});
  if (!err.empty()) {
    out.reason = "equivariance check failed: " + err;
    return out;
  }
  out.is_huang = true;
  out.quantum_verified = quantum;
  return out;
}

HnClassification hn_classify(const FiniteAction& a, const std::vector<HyperoctahedralModel<Rational>>& models) {
  if (a.group != GroupTag::HN) throw PreconditionError("hn_classify: expects an H_N action");
  validate_action(a);
  HnClassification out;
  const int N = a.N;
  const auto orb = orbits(a);
  const auto full = label_generators(GroupTag::HN, N);
  // on an N-orbit the sign flips act trivially
  std::vector<Perm> half = label_generators(GroupTag::SN, N);
  for (int k = 0; k < N; ++k) {
    Perm id(static_cast<std::size_t>(N));
    std::iota(id.begin(), id.end(), 0);
    half.push_back(id);
  }
  const auto gens = generators(a);
  std::vector<std::vector<int>> labeled(orb.size());
  std::vector<int> Z0, Z1;
  for (std::size_t o = 0; o < orb.size(); ++o) {
    const int s = static_cast<int>(orb[o].size());
    const int y = static_cast<int>(o);
    if (s == 1) {
      Z0.push_back(y);
      Z1.push_back(y);
      continue;
    }
    std::optional<std::vector<int>> lab;
    if (s == N) {
      lab = label_orbit(orb[o], gens, half, N);
      if (!lab) out.reason = "orbit of size N where the sign flips do not act trivially";
      Z1.push_back(y);
    } else if (s == 2 * N) {
      lab = label_orbit(orb[o], gens, full, 2 * N);
      if (!lab) out.reason = "orbit of size 2N whose S_N halves are not paired by the sign flips";
    } else {
      out.reason = "orbit of size " + std::to_string(s) + ", expected 1, N or 2N";
    }
    if (!lab) {
      out.witness = orb[o];
      return out;
    }
    labeled[o] = *lab;
  }
  const auto built = hn_build(static_cast<int>(orb.size()), Z0, Z1, N);
  out.model = built.model;
  out.to_action.resize(built.glue.classes.size());
  for (std::size_t c = 0; c < built.glue.classes.size(); ++c) {
    const int p = built.glue.classes[c].front();
    const auto y = static_cast<std::size_t>(p / (2 * N));
    out.to_action[c] = orb[y].size() == 1 ? orb[y].front() : labeled[y][static_cast<std::size_t>(p % (2 * N))];
  }
  const bool quantum = a.has_quantum() && !models.empty();
  const std::string err = check_equivariance(built.action, a, out.to_action, quantum ? models : std::vector<MatrixModel<Rational>>{});
  if (!err.empty()) {
    out.reason = "equivariance check failed: " + err;
    return out;
  }
  out.ok = true;
  out.quantum_verified = quantum;
  return out;
}

MatrixModel<Rational> extend_model(const MatrixModel<Rational>& m, int N) {
  if (N < m.N) throw PreconditionError("extend_model: target smaller than model");
  MatrixModel<Rational> out(N, m.d);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i < m.N && j < m.N)
        out(i, j) = m(i, j);
      else if (i == j)
        out(i, j) = MatQ::Identity(m.d, m.d);
    }
  return out;
}

FiniteAction restrict_action(const FiniteAction& a, int M) {
  if (a.group != GroupTag::SN) throw PreconditionError("restrict_action: S_N actions only");
  if (M < 1 || M > a.N) throw PreconditionError("restrict_action: need 1 <= M <= N");
  FiniteAction r = a;
  r.N = M;
  r.transpositions.resize(static_cast<std::size_t>(M - 1));
  if (a.has_quantum()) {
    const auto rule = a.quantum;
    const int N = a.N;
    r.quantum = [rule, N](const MatrixModel<Rational>& m) { return rule(extend_model(m, N)); };
  }
  return r;
}

bool restriction_cross_check(const FiniteAction& a) {
  const auto full = huang_classify(a);
  if (!full.is_huang || a.N < 2) return false;
  const auto restricted = huang_classify(restrict_action(a, a.N - 1));
  if (!restricted.is_huang) return false;
  const int y = full.model.y_size, z = static_cast<int>(full.model.Z.size());
  return restricted.model.y_size == 2 * (y - z) + z && static_cast<int>(restricted.model.Z.size()) == y;
}

MatrixModel<Rational> z2_regular_model() {
  MatrixModel<Rational> m(1, 2);
  m(0, 0) << 1, 0, 0, -1;
  return m;
}

MatrixModel<Rational> z2_counit_model() {
  MatrixModel<Rational> m(1, 1);
  m(0, 0)(0, 0) = 1;
  return m;
}

CoactionRule<Rational> z2_action(const std::vector<int>& g) {
  if (!is_bijection(g, static_cast<int>(g.size())) || !is_identity(compose(g, g)))
    throw PreconditionError("z2_action: g must be an involution");
  return [g](const MatrixModel<Rational>& m) {
    if (m.N != 1) throw ShapeError("z2_action: expects a 1 x 1 model");
    const MatQ& w = m(0, 0);
    const MatQ one = MatQ::Identity(m.d, m.d);
    const MatQ d0 = (one + w) / Rational(2), d1 = (one - w) / Rational(2);
    CoactionMap<Rational> a(static_cast<int>(g.size()), m.d);
    for (int x = 0; x < a.n; ++x) {
      a.coeff(x, x) += d0;
      a.coeff(g[static_cast<std::size_t>(x)], x) += d1;
    }
    return a;
  };
}

std::vector<int> extend_involution(const HuangBuild& b, const std::vector<int>& g) {
  const int y_size = b.model.y_size, N = b.model.N;
  if (!is_bijection(g, y_size) || !is_identity(compose(g, g))) throw PreconditionError("extend_involution: g must be an involution of Y");
  for (int z : b.model.Z)
    if (!contains(b.model.Z, g[static_cast<std::size_t>(z)])) throw PreconditionError("extend_involution: g must fix Z globally");
  Perm cover(static_cast<std::size_t>(y_size * N));
  for (int y = 0; y < y_size; ++y)
    for (int i = 0; i < N; ++i) cover[static_cast<std::size_t>(y * N + i)] = g[static_cast<std::size_t>(y)] * N + i;
  return descend_permutation(cover, b.glue);
}

CommutingReport commuting_check(const CoactionRule<Rational>& alpha, const CoactionRule<Rational>& beta,
                                const std::vector<ModelPair>& models) {
  CommutingReport r;
  for (std::size_t m = 0; m < models.size(); ++m) {
    const auto A = alpha(models[m].first), B = beta(models[m].second);
    if (A.n != B.n) throw ShapeError("commuting_check: actions on different spaces");
    const int n = A.n;
    for (int w = 0; w < n; ++w)
      for (int x = 0; x < n; ++x) {
        MatQ lhs = MatQ::Zero(A.d * B.d, A.d * B.d), rhs = lhs;
        for (int y = 0; y < n; ++y) {
          lhs += kron(A.coeff(w, y), B.coeff(y, x));
          rhs += kron(A.coeff(y, x), B.coeff(w, y));
        }
        if (lhs != rhs) {
          r.commuting = false;
          r.witness = "model pair " + std::to_string(m) + ", delta_" + std::to_string(x) + " at point " + std::to_string(w);
          return r;
        }
      }
  }
  return r;
}

ProductRule product_build(const CoactionRule<Rational>& alpha, const CoactionRule<Rational>& beta,
                          const std::vector<ModelPair>& models) {
  const auto check = commuting_check(alpha, beta, models);
  if (!check.commuting) throw PreconditionError("product_build: actions do not commute (" + check.witness + ")");
  return [alpha, beta](const MatrixModel<Rational>& g, const MatrixModel<Rational>& h) {
    return compose_coactions(alpha(g), beta(h));
  };
}

std::pair<CoactionRule<Rational>, CoactionRule<Rational>> product_split(const ProductRule& gamma,
                                                                       const MatrixModel<Rational>& counit_g,
                                                                       const MatrixModel<Rational>& counit_h) {
  if (counit_g.d != 1 || counit_h.d != 1) throw PreconditionError("product_split: counit models are one-dimensional");
  CoactionRule<Rational> a = [gamma, counit_h](const MatrixModel<Rational>& g) { return gamma(g, counit_h); };
  CoactionRule<Rational> b = [gamma, counit_g](const MatrixModel<Rational>& h) { return gamma(counit_g, h); };
  return {a, b};
}

Report validate_product_action(const ProductRule& gamma, const std::vector<std::pair<ModelPair, ModelPair>>& pairs,
                               const ModelPair& counits) {
  const double tol = 0.0;
  detail::Check<Rational> mult("multiplicative", tol), unit("unital", tol), star("star", tol), coassoc("coassociative", tol),
      cu("counit", tol);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [m, n] = pairs[p];
    const auto a = gamma(m.first, m.second);
    const MatQ zero = MatQ::Zero(a.d, a.d);
    for (int j = 0; j < a.n; ++j) {
      MatQ s = -MatQ::Identity(a.d, a.d);
      for (int i = 0; i < a.n; ++i) {
        const MatQ& x = a.coeff(j, i);
        star.observe(MatQ(x.adjoint() - x), detail::at(j, i));
        s += x;
        for (int l = 0; l < a.n; ++l) mult.observe(MatQ(x * a.coeff(j, l) - (i == l ? x : zero)), detail::at(j, i, l));
      }
      unit.observe(s, "row " + std::to_string(j));
    }
    const auto lhs = compose_coactions(a, gamma(n.first, n.second));
    const auto rhs = gamma(tensor_model(m.first, n.first), tensor_model(m.second, n.second));
    const int d1 = m.first.d, d2 = m.second.d, e1 = n.first.d, e2 = n.second.d;
    for (int k = 0; k < lhs.n; ++k)
      for (int i = 0; i < lhs.n; ++i)
        coassoc.observe(MatQ(lhs.coeff(k, i) - swap_middle(rhs.coeff(k, i), d1, e1, d2, e2)),
                        "pair " + std::to_string(p) + " " + detail::at(k, i));
  }
  const auto e = gamma(counits.first, counits.second);
  for (int j = 0; j < e.n; ++j)
    for (int i = 0; i < e.n; ++i)
      cu.observe(MatQ(e.coeff(j, i) - (i == j ? MatQ(MatQ::Identity(e.d, e.d)) : MatQ(MatQ::Zero(e.d, e.d)))), detail::at(j, i));
  return {{mult.done(), unit.done(), star.done(), coassoc.done(), cu.done()}};
}

bool same_coefficients(const CoactionMap<Rational>& a, const CoactionMap<Rational>& b) {
  return a.n == b.n && a.d == b.d && a.q == b.q;
}

}  // namespace qsym
