#include "qsym/partition.hpp"

#include "qsym/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qsym {

std::string_view to_string(PartitionFamily f) {
  switch (f) {
    case PartitionFamily::AllNC: return "ALL_NC";
    case PartitionFamily::PairNC: return "PAIR_NC";
    case PartitionFamily::EvenNC: return "EVEN_NC";
  }
  return "?";
}

PartitionFamily family_from_string(std::string_view name) {
  if (name == "ALL_NC") return PartitionFamily::AllNC;
  if (name == "PAIR_NC") return PartitionFamily::PairNC;
  if (name == "EVEN_NC") return PartitionFamily::EvenNC;
  throw ConfigError("unknown partition family: " + std::string(name));
}

namespace {

void canonicalize(std::vector<std::vector<int>>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

SetPartition::SetPartition(int upper, int lower, std::vector<std::vector<int>> blocks)
    : upper_(upper), lower_(lower), blocks_(std::move(blocks)) {
  if (upper < 0 || lower < 0) throw ShapeError("SetPartition: negative row size");
  std::vector<int> seen(static_cast<std::size_t>(upper + lower), 0);
  for (const auto& b : blocks_) {
    if (b.empty()) throw PreconditionError("SetPartition: empty block");
    for (int x : b) {
      if (x < 1 || x > upper + lower)
        throw PreconditionError("SetPartition: point " + std::to_string(x) + " out of range");
      if (seen[static_cast<std::size_t>(x - 1)]++)
        throw PreconditionError("SetPartition: point " + std::to_string(x) + " in two blocks");
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw PreconditionError("SetPartition: point " + std::to_string(i + 1) + " not covered");
  canonicalize(blocks_);
}

SetPartition SetPartition::identity(int k) {
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= k; ++i) blocks.push_back({i, k + i});
  return {k, k, std::move(blocks)};
}

SetPartition SetPartition::from_labels(int upper, int lower, const std::vector<int>& labels) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int lab = labels[i];
    if (lab < 0) throw PreconditionError("from_labels: negative label");
    if (static_cast<std::size_t>(lab) >= slot.size()) slot.resize(static_cast<std::size_t>(lab) + 1, -1);
    if (slot[static_cast<std::size_t>(lab)] < 0) {
      slot[static_cast<std::size_t>(lab)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[static_cast<std::size_t>(lab)])].push_back(static_cast<int>(i) + 1);
  }
  return {upper, lower, std::move(blocks)};
}

std::vector<int> SetPartition::labels() const {
  std::vector<int> out(static_cast<std::size_t>(points()), -1);
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    for (int x : blocks_[b]) out[static_cast<std::size_t>(x - 1)] = static_cast<int>(b);
  return out;
}

int cyclic_position(const SetPartition& p, int point) {
  if (point <= p.upper()) return point - 1;
  const int j = point - p.upper();  // 1..lower, left to right
  return p.upper() + (p.lower() - j);
}

bool SetPartition::is_noncrossing() const {
  const int n = points();
  std::vector<int> by_pos(static_cast<std::size_t>(n));
  const auto lab = labels();
  for (int x = 1; x <= n; ++x) by_pos[static_cast<std::size_t>(cyclic_position(*this, x))] = lab[static_cast<std::size_t>(x - 1)];
  // a < b < c < d with a,c in one block and b,d in another
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (by_pos[static_cast<std::size_t>(b)] == by_pos[static_cast<std::size_t>(a)]) continue;
      for (int c = b + 1; c < n; ++c) {
        if (by_pos[static_cast<std::size_t>(c)] != by_pos[static_cast<std::size_t>(a)]) continue;
        for (int d = c + 1; d < n; ++d)
          if (by_pos[static_cast<std::size_t>(d)] == by_pos[static_cast<std::size_t>(b)]) return false;
      }
    }
  return true;
}

int SetPartition::through_blocks() const {
  int t = 0;
  for (const auto& b : blocks_)
    if (b.front() <= upper_ && b.back() > upper_) ++t;
  return t;
}

SetPartition SetPartition::involution() const {
  std::vector<std::vector<int>> blocks;
  for (const auto& b : blocks_) {
    std::vector<int> nb;
    for (int x : b) nb.push_back(x <= upper_ ? lower_ + x : x - upper_);
    blocks.push_back(std::move(nb));
  }
  return {lower_, upper_, std::move(blocks)};
}

std::string SetPartition::to_string() const {
  std::ostringstream os;
  os << upper_ << "->" << lower_ << " {";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) os << ", ";
    os << "{";
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      const int x = blocks_[b][i];
      if (i) os << ",";
      if (x <= upper_)
        os << "u" << x;
      else
        os << "l" << x - upper_;
    }
    os << "}";
  }
  os << "}";
  return os.str();
}

bool belongs_to(PartitionFamily family, const SetPartition& p) {
  if (!p.is_noncrossing()) return false;
  for (const auto& b : p.blocks()) {
    if (family == PartitionFamily::PairNC && b.size() != 2) return false;
    if (family == PartitionFamily::EvenNC && b.size() % 2 != 0) return false;
  }
  return true;
}

namespace {

// Non-crossing set partitions of {0..n-1} in linear order as block labels.
void generate_nc(int n, int pos, std::vector<int>& label, std::vector<int>& last, int nblocks,
                 PartitionFamily family, std::vector<int>& sizes,
                 std::vector<std::vector<int>>& out) {
  if (pos == n) {
    for (int b = 0; b < nblocks; ++b) {
      const int s = sizes[static_cast<std::size_t>(b)];
      if (family == PartitionFamily::PairNC && s != 2) return;
      if (family == PartitionFamily::EvenNC && s % 2) return;
    }
    out.push_back(label);
    return;
  }
  // Joining block b (last element m) is allowed unless some other block has
  // an element in (m, pos) and one below m.
  for (int b = 0; b < nblocks; ++b) {
    if (family == PartitionFamily::PairNC && sizes[static_cast<std::size_t>(b)] >= 2) continue;
    const int m = last[static_cast<std::size_t>(b)];
    bool ok = true;
    for (int j = m + 1; j < pos && ok; ++j) {
      const int other = label[static_cast<std::size_t>(j)];
      for (int i = 0; i < m; ++i)
        if (label[static_cast<std::size_t>(i)] == other) {
          ok = false;
          break;
        }
    }
    if (!ok) continue;
    label[static_cast<std::size_t>(pos)] = b;
    last[static_cast<std::size_t>(b)] = pos;
    ++sizes[static_cast<std::size_t>(b)];
    generate_nc(n, pos + 1, label, last, nblocks, family, sizes, out);
    --sizes[static_cast<std::size_t>(b)];
    last[static_cast<std::size_t>(b)] = m;
  }
  label[static_cast<std::size_t>(pos)] = nblocks;
  last.push_back(pos);
  sizes.push_back(1);
  generate_nc(n, pos + 1, label, last, nblocks + 1, family, sizes, out);
  sizes.pop_back();
  last.pop_back();
}

}  // namespace

std::vector<SetPartition> enumerate_partitions(PartitionFamily family, int upper, int lower,
                                               const Limits& limits) {
  if (upper < 0 || lower < 0) throw ShapeError("enumerate_partitions: negative row size");
  const int n = upper + lower;
  if (n > limits.max_total_points)
    throw SizeLimitError("enumerate_partitions: " + std::to_string(n) + " points exceeds cap " +
                         std::to_string(limits.max_total_points));
  std::vector<std::vector<int>> cyclic;
  std::vector<int> label(static_cast<std::size_t>(n), -1), last, sizes;
  generate_nc(n, 0, label, last, 0, family, sizes, cyclic);

  // cyclic position -> point code
  std::vector<int> point_at(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) point_at[static_cast<std::size_t>(t)] = t < upper ? t + 1 : upper + lower - (t - upper);

  std::vector<SetPartition> out;
  out.reserve(cyclic.size());
  for (const auto& lab : cyclic) {
    std::vector<int> by_point(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) by_point[static_cast<std::size_t>(point_at[static_cast<std::size_t>(t)] - 1)] = lab[static_cast<std::size_t>(t)];
    out.push_back(SetPartition::from_labels(upper, lower, by_point));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SetPartition tensor(const SetPartition& left, const SetPartition& right) {
  const int lu = left.upper(), ll = left.lower(), ru = right.upper();
  const int upper = lu + ru;
  std::vector<std::vector<int>> blocks;
  for (const auto& b : left.blocks()) {
    std::vector<int> nb;
    for (int x : b) nb.push_back(x <= lu ? x : upper + (x - lu));
    blocks.push_back(std::move(nb));
  }
  for (const auto& b : right.blocks()) {
    std::vector<int> nb;
    for (int x : b) nb.push_back(x <= ru ? lu + x : upper + ll + (x - ru));
    blocks.push_back(std::move(nb));
  }
  return {upper, ll + right.lower(), std::move(blocks)};
}

Composition compose(const SetPartition& q, const SetPartition& p) {
  if (p.lower() != q.upper())
    throw ShapeError("compose: " + p.to_string() + " then " + q.to_string() + " do not match");
  const int k = p.upper(), l = p.lower(), m = q.lower();
  UnionFind uf(k + l + m);
  for (const auto& b : p.blocks())
    for (std::size_t i = 1; i < b.size(); ++i) uf.unite(b[0] - 1, b[i] - 1);
  for (const auto& b : q.blocks()) {
    auto node = [&](int x) { return x <= l ? k + x - 1 : k + l + (x - l) - 1; };
    for (std::size_t i = 1; i < b.size(); ++i) uf.unite(node(b[0]), node(b[i]));
  }
  std::vector<int> root_block(static_cast<std::size_t>(k + l + m), -1);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < k + l + m; ++x) {
    if (x >= k && x < k + l) continue;
    const int r = uf.find(x);
    if (root_block[static_cast<std::size_t>(r)] < 0) {
      root_block[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    const int code = x < k ? x + 1 : k + (x - k - l) + 1;
    blocks[static_cast<std::size_t>(root_block[static_cast<std::size_t>(r)])].push_back(code);
  }
  int loops = 0;
  std::vector<bool> counted(static_cast<std::size_t>(k + l + m), false);
  for (int x = k; x < k + l; ++x) {
    const int r = uf.find(x);
    if (root_block[static_cast<std::size_t>(r)] < 0 && !counted[static_cast<std::size_t>(r)]) {
      counted[static_cast<std::size_t>(r)] = true;
      ++loops;
    }
  }
  return {SetPartition(k, m, std::move(blocks)), loops};
}

bool is_projective(const SetPartition& h) {
  if (h.upper() != h.lower()) return false;
  if (h.involution() != h) return false;
  return compose(h, h).result == h;
}

SetPartition through_block_decomposition(const SetPartition& h) {
  if (!is_projective(h)) throw PreconditionError("through_block_decomposition: not projective: " + h.to_string());
  const int k = h.upper();
  const int t = h.through_blocks();
  // Blocks are ordered by least point, and through-blocks have a top point,
  // so this is left-to-right order of their top rows.
  std::vector<std::vector<int>> blocks;
  int next = 1;
  for (const auto& b : h.blocks()) {
    std::vector<int> top;
    bool bottom = false;
    for (int x : b) {
      if (x <= k)
        top.push_back(x);
      else
        bottom = true;
    }
    if (top.empty()) continue;
    if (bottom) top.push_back(k + next++);
    blocks.push_back(std::move(top));
  }
  return {k, t, std::move(blocks)};
}

}  // namespace qsym
