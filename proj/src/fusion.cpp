#include "qsym/fusion.hpp"

#include "qsym/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qsym {

std::string_view to_string(FusionRing r) {
  switch (r) {
    case FusionRing::SnPlus: return "snplus";
    case FusionRing::OnPlus: return "onplus";
    case FusionRing::HnPlus: return "hnplus";
    case FusionRing::BSharp: return "bsharp";
  }
  return "?";
}

FusionRing ring_from_string(std::string_view name) {
  for (auto r : {FusionRing::SnPlus, FusionRing::OnPlus, FusionRing::HnPlus, FusionRing::BSharp})
    if (to_string(r) == name) return r;
  throw ConfigError("unknown fusion ring: " + std::string(name));
}

FusionLabel FusionLabel::hn(std::string w) {
  for (char c : w)
    if (c != '0' && c != '1') throw PreconditionError("hnplus words use the letters 0 and 1: '" + w + "'");
  return {FusionRing::HnPlus, 0, std::move(w), {}};
}

FusionLabel FusionLabel::bsharp(std::vector<BLetter> letters) {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] < 0) throw PreconditionError("bsharp letters are ω (0) or u_n with n >= 1");
    if (i > 0 && (letters[i] == kOmega) == (letters[i - 1] == kOmega))
      throw PreconditionError("bsharp words must alternate between ω and u_n");
  }
  return {FusionRing::BSharp, 0, {}, std::move(letters)};
}

int FusionLabel::length() const {
  switch (ring) {
    case FusionRing::SnPlus:
    case FusionRing::OnPlus: return n;
    case FusionRing::HnPlus: return static_cast<int>(word.size());
    case FusionRing::BSharp: return static_cast<int>(letters.size());
  }
  return 0;
}

std::string FusionLabel::to_string() const {
  switch (ring) {
    case FusionRing::SnPlus:
    case FusionRing::OnPlus: return std::to_string(n);
    case FusionRing::HnPlus: return word.empty() ? "∅" : word;
    case FusionRing::BSharp: {
      if (letters.empty()) return "∅";
      std::string s;
      for (auto l : letters) s += l == kOmega ? std::string("ω") : "u" + std::to_string(l);
      return s;
    }
  }
  return "?";
}

std::string to_string(const Decomposition& d) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [label, mult] : d) {
    if (!first) os << ", ";
    first = false;
    os << label.to_string();
    if (mult != 1) os << "^" << mult;
  }
  os << "}";
  return os.str();
}

namespace {

using Signed = std::map<int, long>;
using Rule = std::function<Signed(int)>;

// ρ_a ⊗ ρ_b from the generator rule ρ_1 ⊗ ρ_n alone. With
// ρ_1 ⊗ ρ_{a-1} = ρ_a ⊕ (rest), associativity gives
// ρ_a ⊗ ρ_b = ρ_1 ⊗ (ρ_{a-1} ⊗ ρ_b) ⊖ rest ⊗ ρ_b.
Signed recursive_tensor(int a, int b, const Rule& rule, std::map<std::pair<int, int>, Signed>& memo) {
  if (a > b) std::swap(a, b);
  if (a == 0) return {{b, 1}};
  if (a == 1) return rule(b);
  if (auto it = memo.find({a, b}); it != memo.end()) return it->second;
  Signed out;
  for (const auto& [c, m] : recursive_tensor(a - 1, b, rule, memo))
    for (const auto& [d, k] : rule(c)) out[d] += m * k;
  Signed rest = rule(a - 1);
  if (--rest[a] != 0) throw Error("fusion rule does not contain ρ_a in ρ_1 ⊗ ρ_{a-1}");
  rest.erase(a);
  for (const auto& [c, m] : rest)
    for (const auto& [d, k] : recursive_tensor(c, b, rule, memo)) out[d] -= m * k;
  for (auto it = out.begin(); it != out.end();) {
    if (it->second < 0) throw Error("fusion recursion produced a negative multiplicity");
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  memo[{a, b}] = out;
  return out;
}

Decomposition to_decomposition(const Signed& s, FusionRing ring) {
  Decomposition d;
  for (const auto& [n, m] : s) d[ring == FusionRing::SnPlus ? FusionLabel::sn(n) : FusionLabel::on(n)] = static_cast<int>(m);
  return d;
}

Signed sn_rule(int n) {
  if (n == 0) return {{1, 1}};
  return {{n - 1, 1}, {n, 1}, {n + 1, 1}};
}

Signed on_rule(int n) {
  if (n == 0) return {{1, 1}};
  return {{n - 1, 1}, {n + 1, 1}};
}

}  // namespace

Decomposition sn_tensor(int a, int b) {
  if (a < 0 || b < 0) throw PreconditionError("sn_tensor: labels are non-negative");
  std::map<std::pair<int, int>, Signed> memo;
  return to_decomposition(recursive_tensor(a, b, sn_rule, memo), FusionRing::SnPlus);
}

Decomposition on_tensor(int a, int b) {
  if (a < 0 || b < 0) throw PreconditionError("on_tensor: labels are non-negative");
  std::map<std::pair<int, int>, Signed> memo;
  return to_decomposition(recursive_tensor(a, b, on_rule, memo), FusionRing::OnPlus);
}

Integer dims(FusionRing ring, int N, int label) {
  if (label < 0) throw PreconditionError("dims: negative label");
  Integer a, first;
  switch (ring) {
    case FusionRing::SnPlus:
      if (N < 4) throw PreconditionError("dims: S_N^+ needs N >= 4");
      a = N - 2;
      first = N - 1;
      break;
    case FusionRing::OnPlus:
      if (N < 2) throw PreconditionError("dims: O_N^+ needs N >= 2");
      a = N;
      first = N;
      break;
    default: throw PreconditionError("dims: no dimension formula for " + std::string(to_string(ring)));
  }
  Integer prev = 1, cur = first;
  if (label == 0) return prev;
  for (int k = 1; k < label; ++k) {
    Integer next = a * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Integer dims(FusionRing ring, int N, const FusionLabel& label) {
  if (label.ring != ring) throw PreconditionError("dims: label belongs to another ring");
  return dims(ring, N, label.n);
}

WordInfo word_utils(const std::string& w) {
  WordInfo info;
  info.reverse = std::string(w.rbegin(), w.rend());
  info.drop_first = w.empty() ? w : w.substr(1);
  info.drop_last = w.empty() ? w : w.substr(0, w.size() - 1);
  info.is_symmetric = info.reverse == w;
  return info;
}

namespace {

char flip(char c) { return c == '0' ? '1' : '0'; }

void check_letter(char letter) {
  if (letter != '0' && letter != '1') throw PreconditionError("hnplus letters are 0 and 1");
}

}  // namespace

Decomposition hn_left_tensor(char letter, const std::string& w) {
  check_letter(letter);
  FusionLabel::hn(w);
  Decomposition d;
  if (w.empty()) {
    d[FusionLabel::hn(std::string(1, letter))] = 1;
    return d;
  }
  const std::string tail = w.substr(1);
  d[FusionLabel::hn(letter + w)] += 1;
  if (letter == '0')
    d[FusionLabel::hn(w)] += 1;
  else
    d[FusionLabel::hn(flip(w[0]) + tail)] += 1;
  if (w[0] == letter) d[FusionLabel::hn(tail)] += 1;
  return d;
}

Decomposition hn_right_tensor(const std::string& w, char letter) {
  check_letter(letter);
  FusionLabel::hn(w);
  Decomposition d;
  if (w.empty()) {
    d[FusionLabel::hn(std::string(1, letter))] = 1;
    return d;
  }
  const std::string head = w.substr(0, w.size() - 1);
  d[FusionLabel::hn(w + letter)] += 1;
  if (letter == '0')
    d[FusionLabel::hn(w)] += 1;
  else
    d[FusionLabel::hn(head + flip(w.back()))] += 1;
  if (w.back() == letter) d[FusionLabel::hn(head)] += 1;
  return d;
}

namespace {

void bsharp_words_into(const std::vector<BLetter>& x, const std::vector<BLetter>& y, int mult, Decomposition& out) {
  if (x.empty() || y.empty()) {
    std::vector<BLetter> w = x.empty() ? y : x;
    out[FusionLabel::bsharp(std::move(w))] += mult;
    return;
  }
  const BLetter a = x.back(), b = y.front();
  if ((a == kOmega) != (b == kOmega)) {
    std::vector<BLetter> w = x;
    w.insert(w.end(), y.begin(), y.end());
    out[FusionLabel::bsharp(std::move(w))] += mult;
    return;
  }
  const std::vector<BLetter> xs(x.begin(), x.end() - 1), ys(y.begin() + 1, y.end());
  if (a == kOmega) {
    bsharp_words_into(xs, ys, mult, out);
    return;
  }
  for (const auto& [c, m] : on_tensor(a, b)) {
    if (c.n == 0) {
      bsharp_words_into(xs, ys, mult * m, out);
    } else {
      std::vector<BLetter> w = xs;
      w.push_back(c.n);
      w.insert(w.end(), ys.begin(), ys.end());
      out[FusionLabel::bsharp(std::move(w))] += mult * m;
    }
  }
}

}  // namespace

Decomposition bsharp_tensor(const FusionLabel& a, const FusionLabel& b) {
  if (a.ring != FusionRing::BSharp || b.ring != FusionRing::BSharp)
    throw PreconditionError("bsharp_tensor: labels must be bsharp words");
  Decomposition out;
  bsharp_words_into(a.letters, b.letters, 1, out);
  return out;
}

bool bsharp_disjoint(const FusionLabel& a, const FusionLabel& b) {
  const auto ab = bsharp_tensor(a, b);
  for (const auto& [l, m] : bsharp_tensor(b, a))
    if (ab.count(l)) return false;
  return true;
}

std::set<BLetter> leading_letters(const Decomposition& d) {
  std::set<BLetter> out;
  for (const auto& [l, m] : d)
    if (!l.letters.empty()) out.insert(l.letters.front() == kOmega ? kOmega : 1);
  return out;
}

std::vector<FusionLabel> bsharp_words(int max_letters, int max_index) {
  std::vector<FusionLabel> out{FusionLabel::bsharp({})};
  std::vector<std::vector<BLetter>> frontier{{}};
  for (int len = 1; len <= max_letters; ++len) {
    std::vector<std::vector<BLetter>> next;
    for (const auto& w : frontier) {
      const bool need_u = !w.empty() && w.back() == kOmega;
      const bool need_omega = !w.empty() && w.back() != kOmega;
      if (!need_u) {
        auto v = w;
        v.push_back(kOmega);
        next.push_back(std::move(v));
      }
      if (!need_omega)
        for (int n = 1; n <= max_index; ++n) {
          auto v = w;
          v.push_back(n);
          next.push_back(std::move(v));
        }
    }
    for (const auto& w : next) out.push_back(FusionLabel::bsharp(w));
    frontier = std::move(next);
  }
  return out;
}

std::vector<std::string> binary_words(int max_length) {
  std::vector<std::string> out{""};
  std::size_t start = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i) {
      out.push_back(out[i] + '0');
      out.push_back(out[i] + '1');
    }
    start = end;
  }
  return out;
}

FusionLabel conjugate(const FusionLabel& l) {
  FusionLabel c = l;
  std::reverse(c.word.begin(), c.word.end());
  std::reverse(c.letters.begin(), c.letters.end());
  return c;
}

namespace {

std::set<FusionLabel> base_block(FusionRing ring) {
  switch (ring) {
    case FusionRing::SnPlus:
    case FusionRing::OnPlus: return {FusionLabel{ring, 0, {}, {}}, FusionLabel{ring, 1, {}, {}}};
    case FusionRing::HnPlus: return {FusionLabel::hn(""), FusionLabel::hn("0"), FusionLabel::hn("1")};
    case FusionRing::BSharp: {
      const BLetter w = kOmega;
      return {FusionLabel::bsharp({}),     FusionLabel::bsharp({w}),       FusionLabel::bsharp({1}),
              FusionLabel::bsharp({w, 1}), FusionLabel::bsharp({1, w}), FusionLabel::bsharp({w, 1, w})};
    }
  }
  return {};
}

std::set<FusionLabel> keys(const Decomposition& d) {
  std::set<FusionLabel> out;
  for (const auto& [l, m] : d) out.insert(l);
  return out;
}

std::set<FusionLabel> intersect(const std::set<FusionLabel>& a, const std::set<FusionLabel>& b) {
  std::set<FusionLabel> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

// Labels that B_a · B_b may meet, or nullopt when no rule applies.
std::optional<std::set<FusionLabel>> product_support(FusionRing ring, ClosureMode mode, const FusionLabel& a,
                                                     const FusionLabel& b) {
  switch (ring) {
    case FusionRing::SnPlus:
    case FusionRing::OnPlus: {
      const auto full = keys(ring == FusionRing::SnPlus ? sn_tensor(a.n, b.n) : on_tensor(a.n, b.n));
      if (mode == ClosureMode::Full || a != b || a.n == 0) return full;
      return intersect(full, base_block(ring));
    }
    case FusionRing::HnPlus: {
      std::optional<std::set<FusionLabel>> ab;
      if (a.word.empty()) return std::set<FusionLabel>{b};
      if (b.word.empty()) return std::set<FusionLabel>{a};
      if (a.word.size() == 1)
        ab = intersect(keys(hn_left_tensor(a.word[0], b.word)), keys(hn_right_tensor(b.word, a.word[0])));
      else if (b.word.size() == 1)
        ab = intersect(keys(hn_right_tensor(a.word, b.word[0])), keys(hn_left_tensor(b.word[0], a.word)));
      if (a == b) return ab ? intersect(*ab, base_block(ring)) : base_block(ring);
      return ab;
    }
    case FusionRing::BSharp: {
      auto common = intersect(keys(bsharp_tensor(a, b)), keys(bsharp_tensor(b, a)));
      if (a == b) return intersect(common, base_block(ring));
      return common;
    }
  }
  return std::nullopt;
}

}  // namespace

ClosureResult spectrum_closure(FusionRing ring, const std::set<FusionLabel>& s, ClosureMode mode) {
  const bool supported = (ring == FusionRing::SnPlus) || (ring == FusionRing::OnPlus && mode == ClosureMode::Full) ||
                         ((ring == FusionRing::HnPlus || ring == FusionRing::BSharp) && mode == ClosureMode::Containment);
  if (!supported)
    throw PreconditionError("spectrum_closure: mode not supported for " + std::string(to_string(ring)));
  ClosureResult r;
  int longest = 1;
  for (const auto& l : s) {
    if (l.ring != ring) throw PreconditionError("spectrum_closure: label from another ring");
    longest = std::max(longest, l.length());
  }
  r.length_cap = 2 * longest;
  std::set<FusionLabel> work = s;
  for (const auto& l : s) work.insert(conjugate(l));
  std::set<std::pair<FusionLabel, FusionLabel>> done;
  std::set<FusionLabel> reported;
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<FusionLabel> current(work.begin(), work.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i; j < current.size(); ++j) {
        const auto& a = current[i];
        const auto& b = current[j];
        if (!done.insert({a, b}).second) continue;
        const auto support = product_support(ring, mode, a, b);
        if (!support) {
          r.undetermined.emplace_back(a, b);
          continue;
        }
        for (const auto& c : *support) {
          if (work.count(c)) continue;
          if (reported.insert(c).second) r.witnesses.push_back({c, a, b});
          if (c.length() > r.length_cap) {
            r.truncated = true;
            continue;
          }
          work.insert(c);
          work.insert(conjugate(c));
          grew = true;
        }
      }
  }
  r.closure = std::move(work);
  r.closed = r.witnesses.empty() && r.undetermined.empty();
  return r;
}

}  // namespace qsym
