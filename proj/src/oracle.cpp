#include "topic/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

namespace topic::oracle {

Utility utility_of(const UtilityDatabase& db, std::span<const ItemId> itemset) {
  Utility total = 0;
  for (const Transaction& t : db.transactions()) {
    Utility in_t = 0;
    bool contains_all = true;
    for (ItemId x : itemset) {
      const auto it = std::find_if(
          t.items.begin(), t.items.end(),
          [x](const ItemUtility& iu) { return iu.item == x; });
      if (it == t.items.end()) {
        contains_all = false;
        break;
      }
      in_t += it->utility;
    }
    if (contains_all) total += in_t;
  }
  return total;
}

std::vector<std::size_t> processing_ranks(const UtilityDatabase& db) {
  const std::size_t n = db.item_count();
  std::vector<Utility> rtwu(n, 0);
  for (const Transaction& t : db.transactions()) {
    Utility rtu = 0;
    for (const auto& iu : t.items) rtu += std::max<Utility>(iu.utility, 0);
    for (const auto& iu : t.items) rtwu[iu.item] += rtu;
  }
  std::vector<ItemId> items(n);
  std::iota(items.begin(), items.end(), ItemId{0});
  std::sort(items.begin(), items.end(), [&](ItemId a, ItemId b) {
    const auto key = [&](ItemId x) {
      return std::tuple(db.is_positive(x) ? 0 : 1, rtwu[x], db.label(x));
    };
    return key(a) < key(b);
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[items[r]] = r;
  return rank;
}

namespace {

struct Found {
  std::vector<ItemId> items;  // ascending dense ids
  Utility utility;
};

class Enumerator {
 public:
  explicit Enumerator(const UtilityDatabase& db) : db_(db) {
    for (const Transaction& t : db.transactions()) {
      for (const auto& iu : t.items) {
        if (std::find(items_.begin(), items_.end(), iu.item) == items_.end()) {
          items_.push_back(iu.item);
        }
      }
    }
    std::sort(items_.begin(), items_.end());
    if (items_.size() > kMaxItems) {
      throw TooManyItems("oracle supports at most " +
                         std::to_string(kMaxItems) + " items, got " +
                         std::to_string(items_.size()));
    }
    // Dense per-transaction utility table.
    table_.assign(db.size(), std::vector<Utility>(items_.size(), 0));
    present_.assign(db.size(), std::vector<bool>(items_.size(), false));
    for (std::size_t j = 0; j < db.size(); ++j) {
      for (const auto& iu : db.transactions()[j].items) {
        const auto col = static_cast<std::size_t>(
            std::lower_bound(items_.begin(), items_.end(), iu.item) -
            items_.begin());
        table_[j][col] = iu.utility;
        present_[j][col] = true;
      }
    }
  }

  std::vector<Found> run() {
    std::vector<std::size_t> all(db_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<Utility> partial(db_.size(), 0);
    std::vector<ItemId> chosen;
    recurse(0, all, partial, chosen);
    return std::move(found_);
  }

 private:
  // `tids` are the transactions containing `chosen`; `partial[j]` is
  // U(chosen, T_j).
  void recurse(std::size_t next, const std::vector<std::size_t>& tids,
               const std::vector<Utility>& partial,
               std::vector<ItemId>& chosen) {
    for (std::size_t col = next; col < items_.size(); ++col) {
      std::vector<std::size_t> sub;
      for (std::size_t j : tids) {
        if (present_[j][col]) sub.push_back(j);
      }
      if (sub.empty()) continue;
      std::vector<Utility> extended(partial);
      Utility total = 0;
      for (std::size_t j : sub) {
        extended[j] += table_[j][col];
        total += extended[j];
      }
      chosen.push_back(items_[col]);
      found_.push_back({chosen, total});
      recurse(col + 1, sub, extended, chosen);
      chosen.pop_back();
    }
  }

  const UtilityDatabase& db_;
  std::vector<ItemId> items_;
  std::vector<std::vector<Utility>> table_;
  std::vector<std::vector<bool>> present_;
  std::vector<Found> found_;
};

}  // namespace

OracleResult enumerate_topk(const UtilityDatabase& db, std::size_t k,
                            bool keep_all) {
  std::vector<Found> found = Enumerator(db).run();

  OracleResult out;
  if (keep_all) {
    out.all_utilities.emplace();
    for (const Found& f : found) (*out.all_utilities)[f.items] = f.utility;
  }

  const auto rank = processing_ranks(db);
  std::vector<std::pair<std::vector<std::size_t>, const Found*>> ranked;
  for (const Found& f : found) {
    if (f.utility < 1) continue;
    std::vector<std::size_t> key;
    for (ItemId x : f.items) key.push_back(rank[x]);
    std::sort(key.begin(), key.end());
    ranked.emplace_back(std::move(key), &f);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second->utility != b.second->utility) {
      return a.second->utility > b.second->utility;
    }
    return a.first < b.first;
  });
  if (ranked.size() > k) ranked.resize(k);
  for (const auto& [key, f] : ranked) out.top_k.push_back({f->items, f->utility});
  return out;
}

}  // namespace topic::oracle
