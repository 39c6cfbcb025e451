#include "topic/topk_store.hpp"

#include <algorithm>
#include <stdexcept>

namespace topic {

bool ranks_before(const RankedItemset& a, const RankedItemset& b) {
  if (a.utility != b.utility) return a.utility > b.utility;
  return std::lexicographical_compare(a.items.begin(), a.items.end(),
                                      b.items.begin(), b.items.end());
}

TopKStore::TopKStore(std::size_t k, Utility floor)
    : k_(k), floor_(floor), min_util_(floor) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
}

void TopKStore::raise_to(Utility value) { min_util_ = std::max(min_util_, value); }

Utility TopKStore::raise_with_riu(std::span<const Utility> riu_descending) {
  if (riu_descending.size() >= k_) raise_to(riu_descending[k_ - 1]);
  return min_util_;
}

Utility TopKStore::offer(std::vector<ItemId> itemset, Utility utility) {
  if (utility < min_util_) return min_util_;
  heap_.push({std::move(itemset), utility});
  if (heap_.size() > k_) heap_.pop();
  if (heap_.size() == k_) raise_to(heap_.top().utility);
  return min_util_;
}

std::vector<RankedItemset> TopKStore::results() const {
  auto copy = heap_;
  std::vector<RankedItemset> out;
  out.reserve(copy.size());
  while (!copy.empty()) {
    out.push_back(copy.top());
    copy.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace topic
