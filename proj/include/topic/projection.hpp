#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "topic/database.hpp"

namespace topic {

/// Processing order over items: positive items first, then negative items;
/// within each class RTWU ascending, ties broken by raw label ascending.
class TotalOrder {
 public:
  TotalOrder() = default;
  explicit TotalOrder(std::vector<ItemId> items_by_rank,
                      std::size_t positive_cutoff);

  std::size_t size() const { return item_at_.size(); }
  ItemId rank(ItemId item) const { return rank_of_[item]; }
  ItemId item_at(ItemId rank) const { return item_at_[rank]; }
  /// First rank belonging to a negative item.
  std::size_t positive_cutoff() const { return positive_cutoff_; }
  std::span<const ItemId> items_by_rank() const { return item_at_; }

 private:
  std::vector<ItemId> rank_of_;
  std::vector<ItemId> item_at_;
  std::size_t positive_cutoff_ = 0;
};

TotalOrder build_total_order(const UtilityDatabase& db,
                             std::span<const ItemSummary> summaries);

/// Backward-lexicographic transaction order: items are compared from the
/// last one towards the first; when one sequence is exhausted first, the
/// shorter one sorts first.
bool transaction_order_less(std::span<const ItemUtility> a,
                            std::span<const ItemUtility> b);

/// Rewrites `db` into rank space: item ids of the result are ranks under
/// `order`, labels and signs follow the items. Items that are in neither
/// `secondary` nor `negatives_kept` (both given as original ids) are
/// removed, empty transactions dropped, and the remaining transactions
/// sorted by transaction_order_less.
UtilityDatabase remap_database(const UtilityDatabase& db,
                               const TotalOrder& order,
                               std::span<const ItemId> secondary,
                               std::span<const ItemId> negatives_kept);

// ---------------------------------------------------------------------------

/// Offset view over a stored record. Everything at positions >= offset is
/// the projected suffix. `record` points either into the parent database or
/// into a coalesced record owned by a ProjectedDatabase.
struct ProjectedTransaction {
  std::span<const ItemUtility> record;
  std::uint32_t offset = 0;
  /// U(alpha, T), summed over merged transactions.
  Utility prefix_utility = 0;
  /// Positive part of U(alpha, T).
  Utility prefix_positive = 0;
  /// Number of original transactions represented by this view.
  std::uint32_t weight = 1;

  std::span<const ItemUtility> suffix() const {
    return record.subspan(offset);
  }
};

class ProjectedDatabase {
 public:
  ProjectedDatabase() = default;
  ProjectedDatabase(const ProjectedDatabase&) = delete;
  ProjectedDatabase& operator=(const ProjectedDatabase&) = delete;
  ProjectedDatabase(ProjectedDatabase&&) noexcept = default;
  ProjectedDatabase& operator=(ProjectedDatabase&&) noexcept = default;

  /// One view per transaction with offset 0 and empty prefix.
  static ProjectedDatabase root(const UtilityDatabase& db);

  const UtilityDatabase* parent() const { return parent_; }
  std::span<const ProjectedTransaction> views() const { return views_; }
  std::size_t size() const { return views_.size(); }
  bool empty() const { return views_.empty(); }
  /// Number of coalesced records this database owns.
  std::size_t owned_records() const { return owned_.size(); }

 private:
  friend class ProjectionBuilder;

  const UtilityDatabase* parent_ = nullptr;
  std::vector<ProjectedTransaction> views_;
  // Inner buffers never move when the outer vector grows, so views into
  // them stay valid.
  std::vector<std::vector<ItemUtility>> owned_;
};

struct Extension {
  /// Exact U(alpha + x): sum of prefix_utility + U(x, T) over views with x.
  Utility utility = 0;
  /// Original transactions containing alpha + x (sum of view weights).
  std::size_t support = 0;
  /// Views with x, excluding those whose remaining suffix is empty.
  ProjectedDatabase pdb;
  /// Pairs of views coalesced while building `pdb`.
  std::size_t merges = 0;
};

/// Single scan: computes U(alpha + x) and the (alpha + x)-projection of
/// `pdb`. With `merge`, adjacent views whose suffixes hold the same items
/// are coalesced on the fly. `x` must be in E(alpha).
Extension project(const ProjectedDatabase& pdb, ItemId x, bool merge);

/// Coalesces adjacent views with identical suffixes. Returns the number of
/// merged pairs through `merges` when non-null.
ProjectedDatabase merge_identical(const ProjectedDatabase& pdb,
                                  std::size_t* merges = nullptr);

}  // namespace topic
