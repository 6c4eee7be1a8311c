#ifndef QSYM_PARTITION_HPP
#define QSYM_PARTITION_HPP

#include "qsym/limits.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace qsym {

/// Categories of non-crossing partitions realized here.
///   AllNC  - every non-crossing partition (quantum permutations)
///   PairNC - non-crossing pairings (free orthogonal / bistochastic)
///   EvenNC - non-crossing partitions with even blocks (hyperoctahedral)
enum class PartitionFamily { AllNC, PairNC, EvenNC };

std::string_view to_string(PartitionFamily f);
PartitionFamily family_from_string(std::string_view name);

/// Two-row partition with `upper` top points and `lower` bottom points.
///
/// Points are numbered 1..upper along the top row left to right, then
/// upper+1..upper+lower along the bottom row left to right. Blocks are stored
/// canonically: each sorted ascending, blocks ordered by their least point.
class SetPartition {
 public:
  SetPartition() = default;
  SetPartition(int upper, int lower, std::vector<std::vector<int>> blocks);

  static SetPartition identity(int k);
  static SetPartition from_labels(int upper, int lower, const std::vector<int>& labels);

  int upper() const { return upper_; }
  int lower() const { return lower_; }
  int points() const { return upper_ + lower_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

  /// Block index of every point, indexed by point code - 1.
  std::vector<int> labels() const;

  bool is_noncrossing() const;
  /// Number of blocks meeting both rows.
  int through_blocks() const;

  /// Swap the rows (adjoint on the operator side).
  SetPartition involution() const;

  std::string to_string() const;

  auto operator<=>(const SetPartition&) const = default;

 private:
  int upper_ = 0;
  int lower_ = 0;
  std::vector<std::vector<int>> blocks_;
};

/// Position of a point along the boundary: top row left to right, then the
/// bottom row right to left.
int cyclic_position(const SetPartition& p, int point);

bool belongs_to(PartitionFamily family, const SetPartition& p);

/// All members of `family` with the given shape, in canonical order.
std::vector<SetPartition> enumerate_partitions(PartitionFamily family, int upper, int lower,
                                               const Limits& limits = Limits::defaults());

/// Horizontal concatenation, `left` placed to the left of `right`.
SetPartition tensor(const SetPartition& left, const SetPartition& right);

struct Composition {
  SetPartition result;
  int loops = 0;
};

/// q after p (p: k -> l on top, q: l -> m below); closed middle components are
/// removed and counted.
Composition compose(const SetPartition& q, const SetPartition& p);

/// h = h* and h o h = h (ignoring loops).
bool is_projective(const SetPartition& h);

/// v with v* o v = h; v sends the top row of h onto one point per through-block.
SetPartition through_block_decomposition(const SetPartition& h);

}  // namespace qsym

#endif
