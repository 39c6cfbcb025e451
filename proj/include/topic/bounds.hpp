#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "topic/database.hpp"
#include "topic/projection.hpp"

namespace topic {

/// Length-|I| accumulator with a touched list, so a reset costs
/// O(items written) instead of O(|I|).
class UtilityArray {
 public:
  UtilityArray() = default;
  explicit UtilityArray(std::size_t size) : values_(size, 0), marks_(size, 0) {}

  std::size_t size() const { return values_.size(); }

  void add(ItemId item, Utility value) {
    if (!marks_[item]) {
      marks_[item] = 1;
      touched_.push_back(item);
    }
    values_[item] += value;
  }

  Utility operator[](ItemId item) const { return values_[item]; }
  std::span<const ItemId> touched() const { return touched_; }

  void reset() {
    for (ItemId item : touched_) {
      values_[item] = 0;
      marks_[item] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<Utility> values_;
  std::vector<std::uint8_t> marks_;
  std::vector<ItemId> touched_;
};

struct ItemBound {
  ItemId item;
  Utility value;

  friend bool operator==(const ItemBound&, const ItemBound&) = default;
};

/// Adds RLU(alpha, z) for every positive z in the views of `pdb`:
/// sum over views containing z of prefix_utility + RU(alpha, T), where RU
/// counts only positive utilities in the suffix.
void accumulate_rlu(const ProjectedDatabase& pdb, UtilityArray& rlu);

/// Adds RSU(alpha, z) for every z in the views of `pdb`.
///
/// Positive z: sum of prefix_utility + U(z, T) + positive utilities after z.
/// Negative z: sum of prefix_positive, i.e. only the positive part of the
/// prefix. A negative extension can only lower each transaction's
/// contribution, but it also drops transactions, and dropped transactions
/// may have contributed negatively; the positive prefix is the tightest
/// per-transaction quantity that stays an upper bound and adds up exactly
/// under merging.
void accumulate_rsu(const ProjectedDatabase& pdb, UtilityArray& rsu);

/// Both bounds in one scan of `pdb`.
void accumulate_bounds(const ProjectedDatabase& pdb, UtilityArray& rlu,
                       UtilityArray& rsu);

/// Map form of accumulate_rlu, sorted by item. `ua` must be reset on entry
/// and is reset on return.
std::vector<ItemBound> compute_rlu(const ProjectedDatabase& pdb,
                                   UtilityArray& ua);
std::vector<ItemBound> compute_rsu(const ProjectedDatabase& pdb,
                                   UtilityArray& ua);

/// Real utility of every item, sorted descending.
std::vector<Utility> compute_riu(const UtilityDatabase& db);

}  // namespace topic
