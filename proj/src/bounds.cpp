#include "topic/bounds.hpp"

#include <algorithm>
#include <functional>

namespace topic {

namespace {

// Item signs are global, so the sign of a stored (possibly merged)
// utility is the sign of the item.
bool positive_item(const ItemUtility& iu) { return iu.utility > 0; }

template <bool WantRlu, bool WantRsu>
void scan(const ProjectedDatabase& pdb, UtilityArray* rlu, UtilityArray* rsu) {
  for (const ProjectedTransaction& view : pdb.views()) {
    const auto suffix = view.suffix();
    Utility remaining = 0;
    for (const auto& iu : suffix) {
      if (positive_item(iu)) remaining += iu.utility;
    }
    if constexpr (WantRlu) {
      const Utility local = view.prefix_utility + remaining;
      for (const auto& iu : suffix) {
        if (positive_item(iu)) rlu->add(iu.item, local);
      }
    }
    if constexpr (WantRsu) {
      Utility after = 0;
      for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) {
        if (positive_item(*it)) {
          rsu->add(it->item, view.prefix_utility + it->utility + after);
          after += it->utility;
        } else {
          rsu->add(it->item, view.prefix_positive);
        }
      }
    }
  }
}

std::vector<ItemBound> collect(UtilityArray& ua) {
  std::vector<ItemBound> out;
  out.reserve(ua.touched().size());
  for (ItemId item : ua.touched()) out.push_back({item, ua[item]});
  std::sort(out.begin(), out.end(),
            [](const ItemBound& a, const ItemBound& b) { return a.item < b.item; });
  ua.reset();
  return out;
}

}  // namespace

void accumulate_rlu(const ProjectedDatabase& pdb, UtilityArray& rlu) {
  scan<true, false>(pdb, &rlu, nullptr);
}

void accumulate_rsu(const ProjectedDatabase& pdb, UtilityArray& rsu) {
  scan<false, true>(pdb, nullptr, &rsu);
}

void accumulate_bounds(const ProjectedDatabase& pdb, UtilityArray& rlu,
                       UtilityArray& rsu) {
  scan<true, true>(pdb, &rlu, &rsu);
}

std::vector<ItemBound> compute_rlu(const ProjectedDatabase& pdb,
                                   UtilityArray& ua) {
  accumulate_rlu(pdb, ua);
  return collect(ua);
}

std::vector<ItemBound> compute_rsu(const ProjectedDatabase& pdb,
                                   UtilityArray& ua) {
  accumulate_rsu(pdb, ua);
  return collect(ua);
}

std::vector<Utility> compute_riu(const UtilityDatabase& db) {
  std::vector<Utility> riu(db.item_count(), 0);
  for (const Transaction& t : db.transactions()) {
    for (const auto& [item, u] : t.items) riu[item] += u;
  }
  std::sort(riu.begin(), riu.end(), std::greater<>());
  return riu;
}

}  // namespace topic
