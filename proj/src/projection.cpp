#include "topic/projection.hpp"

#include <algorithm>
#include <numeric>

namespace topic {

TotalOrder::TotalOrder(std::vector<ItemId> items_by_rank,
                       std::size_t positive_cutoff)
    : rank_of_(items_by_rank.size()),
      item_at_(std::move(items_by_rank)),
      positive_cutoff_(positive_cutoff) {
  for (ItemId r = 0; r < item_at_.size(); ++r) rank_of_[item_at_[r]] = r;
}

TotalOrder build_total_order(const UtilityDatabase& db,
                             std::span<const ItemSummary> summaries) {
  std::vector<ItemId> items(db.item_count());
  std::iota(items.begin(), items.end(), ItemId{0});
  std::sort(items.begin(), items.end(), [&](ItemId a, ItemId b) {
    const bool pa = db.is_positive(a);
    const bool pb = db.is_positive(b);
    if (pa != pb) return pa;
    if (summaries[a].rtwu != summaries[b].rtwu) {
      return summaries[a].rtwu < summaries[b].rtwu;
    }
    return db.label(a) < db.label(b);
  });
  const std::size_t cutoff = db.positive_items().size();
  return TotalOrder(std::move(items), cutoff);
}

bool transaction_order_less(std::span<const ItemUtility> a,
                            std::span<const ItemUtility> b) {
  return std::lexicographical_compare(
      a.rbegin(), a.rend(), b.rbegin(), b.rend(),
      [](const ItemUtility& x, const ItemUtility& y) {
        return x.item < y.item;
      });
}

UtilityDatabase remap_database(const UtilityDatabase& db,
                               const TotalOrder& order,
                               std::span<const ItemId> secondary,
                               std::span<const ItemId> negatives_kept) {
  const std::size_t n = db.item_count();
  std::vector<bool> keep(n, false);
  for (ItemId item : secondary) keep[item] = true;
  for (ItemId item : negatives_kept) keep[item] = true;

  std::vector<ItemLabel> labels(n);
  std::vector<ItemSign> signs(n);
  for (ItemId r = 0; r < n; ++r) {
    labels[r] = db.label(order.item_at(r));
    signs[r] = db.sign(order.item_at(r));
  }

  std::vector<Transaction> out;
  out.reserve(db.size());
  for (const Transaction& t : db.transactions()) {
    Transaction rt;
    rt.tid = t.tid;
    for (const auto& [item, u] : t.items) {
      if (!keep[item]) continue;
      rt.items.push_back({order.rank(item), u});
      rt.tu += u;
    }
    if (rt.items.empty()) continue;
    std::sort(rt.items.begin(), rt.items.end(),
              [](const ItemUtility& a, const ItemUtility& b) {
                return a.item < b.item;
              });
    out.push_back(std::move(rt));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Transaction& a, const Transaction& b) {
                     return transaction_order_less(a.items, b.items);
                   });
  return UtilityDatabase(std::move(out), std::move(labels), std::move(signs));
}

// ---------------------------------------------------------------------------

namespace {

bool same_items(std::span<const ItemUtility> a, std::span<const ItemUtility> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const ItemUtility& x, const ItemUtility& y) {
                      return x.item == y.item;
                    });
}

}  // namespace

class ProjectionBuilder {
 public:
  ProjectionBuilder(const UtilityDatabase* parent, std::size_t reserve,
                    bool merge)
      : merge_(merge) {
    out_.parent_ = parent;
    out_.views_.reserve(reserve);
  }

  void append(const ProjectedTransaction& view) {
    if (merge_ && !out_.views_.empty() &&
        same_items(out_.views_.back().suffix(), view.suffix())) {
      coalesce(view);
      return;
    }
    out_.views_.push_back(view);
    last_owned_ = false;
  }

  std::size_t merges() const { return merges_; }
  ProjectedDatabase take() { return std::move(out_); }

 private:
  void coalesce(const ProjectedTransaction& view) {
    ProjectedTransaction& last = out_.views_.back();
    if (!last_owned_) {
      const auto suffix = last.suffix();
      out_.owned_.emplace_back(suffix.begin(), suffix.end());
      last.record = out_.owned_.back();
      last.offset = 0;
      last_owned_ = true;
    }
    auto& record = out_.owned_.back();
    const auto incoming = view.suffix();
    for (std::size_t i = 0; i < record.size(); ++i) {
      record[i].utility += incoming[i].utility;
    }
    last.prefix_utility += view.prefix_utility;
    last.prefix_positive += view.prefix_positive;
    last.weight += view.weight;
    ++merges_;
  }

  ProjectedDatabase out_;
  bool merge_;
  bool last_owned_ = false;
  std::size_t merges_ = 0;
};

ProjectedDatabase ProjectedDatabase::root(const UtilityDatabase& db) {
  ProjectedDatabase pdb;
  pdb.parent_ = &db;
  pdb.views_.reserve(db.size());
  for (const Transaction& t : db.transactions()) {
    pdb.views_.push_back({t.items, 0, 0, 0, 1});
  }
  return pdb;
}

Extension project(const ProjectedDatabase& pdb, ItemId x, bool merge) {
  Extension ext;
  ProjectionBuilder builder(pdb.parent(), pdb.size(), merge);
  const bool positive = pdb.parent() == nullptr || pdb.parent()->is_positive(x);
  for (const ProjectedTransaction& view : pdb.views()) {
    const auto suffix = view.suffix();
    const auto it = std::lower_bound(
        suffix.begin(), suffix.end(), x,
        [](const ItemUtility& iu, ItemId item) { return iu.item < item; });
    if (it == suffix.end() || it->item != x) continue;

    const Utility u = view.prefix_utility + it->utility;
    ext.utility += u;
    ext.support += view.weight;

    const auto next = static_cast<std::uint32_t>(
        view.offset + (it - suffix.begin()) + 1);
    if (next == view.record.size()) continue;
    builder.append({view.record, next, u,
                    view.prefix_positive + (positive ? it->utility : 0),
                    view.weight});
  }
  ext.merges = builder.merges();
  ext.pdb = builder.take();
  return ext;
}

ProjectedDatabase merge_identical(const ProjectedDatabase& pdb,
                                  std::size_t* merges) {
  ProjectionBuilder builder(pdb.parent(), pdb.size(), true);
  for (const ProjectedTransaction& view : pdb.views()) builder.append(view);
  if (merges) *merges = builder.merges();
  return builder.take();
}

}  // namespace topic
