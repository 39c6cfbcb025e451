#pragma once

#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "topic/database.hpp"

namespace topic {

struct RankedItemset {
  std::vector<ItemId> items;
  Utility utility = 0;

  friend bool operator==(const RankedItemset&, const RankedItemset&) = default;
};

/// Result ranking: utility descending, then item sequence lexicographically
/// ascending. Item sequences are compared as given, so callers pass items
/// in processing-order ranks.
bool ranks_before(const RankedItemset& a, const RankedItemset& b);

/// The best k itemsets seen so far and the minimum utility a newcomer needs.
///
/// min_util never decreases. It is at least `floor`, at least any value set
/// by raise_with_riu, and, once k entries are held, at least the utility of
/// the worst entry.
class TopKStore {
 public:
  explicit TopKStore(std::size_t k, Utility floor = 1);

  std::size_t capacity() const { return k_; }
  std::size_t size() const { return heap_.size(); }
  Utility floor() const { return floor_; }
  Utility min_util() const { return min_util_; }

  /// Raises min_util to the k-th value of a descending list of single-item
  /// utilities, when the list has at least k entries.
  Utility raise_with_riu(std::span<const Utility> riu_descending);

  /// Inserts when utility >= min_util, evicting the worst entry on
  /// overflow. Returns the (possibly raised) min_util.
  Utility offer(std::vector<ItemId> itemset, Utility utility);

  /// Entries in ranking order.
  std::vector<RankedItemset> results() const;

 private:
  struct WorstOnTop {
    bool operator()(const RankedItemset& a, const RankedItemset& b) const {
      return ranks_before(a, b);
    }
  };

  void raise_to(Utility value);

  std::size_t k_;
  Utility floor_;
  Utility min_util_;
  std::priority_queue<RankedItemset, std::vector<RankedItemset>, WorstOnTop>
      heap_;
};

}  // namespace topic
