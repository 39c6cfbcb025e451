#include "topic/miner.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "topic/bounds.hpp"
#include "topic/projection.hpp"

namespace topic {

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::full: return "full";
    case Variant::merge_only: return "merge-only";
    case Variant::subtree_only: return "subtree-only";
    case Variant::none: return "none";
  }
  return "full";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (Variant v : kAllVariants) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

MinerConfig MinerConfig::for_variant(Variant v, std::size_t k) {
  MinerConfig c;
  c.k = k;
  c.enable_merging = v == Variant::full || v == Variant::merge_only;
  c.enable_subtree_pruning = v == Variant::full || v == Variant::subtree_only;
  return c;
}

Variant MinerConfig::variant() const {
  if (enable_merging) {
    return enable_subtree_pruning ? Variant::full : Variant::merge_only;
  }
  return enable_subtree_pruning ? Variant::subtree_only : Variant::none;
}

namespace {

// Depth-first search over the remapped database. Item ids here are ranks:
// positives occupy [0, cutoff), negatives [cutoff, |I|).
class Search {
 public:
  Search(const UtilityDatabase& remapped, const TotalOrder& order,
         const MinerConfig& config, TopKStore& store, MineStats& stats,
         const MineObserver* observer, std::vector<ItemId> eta)
      : order_(order),
        config_(config),
        store_(store),
        stats_(stats),
        observer_(observer),
        eta_(std::move(eta)),
        rlu_(remapped.item_count()),
        rsu_(remapped.item_count()) {}

  void run(const ProjectedDatabase& root, std::span<const ItemId> primary,
           std::span<const ItemId> secondary) {
    track_live(static_cast<std::int64_t>(root.size()));
    search_p(root, primary, secondary);
    track_live(-static_cast<std::int64_t>(root.size()));
  }

 private:
  void search_p(const ProjectedDatabase& pdb, std::span<const ItemId> primary,
                std::span<const ItemId> secondary) {
    for (ItemId z : primary) {
      Extension ext = extend(pdb, z);
      if (ext.support == 0) continue;
      prefix_.push_back(z);
      evaluate(ext.utility);
      track_live(static_cast<std::int64_t>(ext.pdb.size()));

      // Negative extensions strictly lower the utility, so they can only
      // qualify when U(beta) is strictly above the threshold.
      if (ext.utility > store_.min_util() && !ext.pdb.empty()) {
        search_n(ext.pdb, eta_);
      }

      if (!ext.pdb.empty()) {
        accumulate_bounds(ext.pdb, rlu_, rsu_);
        const Utility threshold = store_.min_util();
        std::vector<ItemId> next_primary;
        std::vector<ItemId> next_secondary;
        const auto after =
            std::upper_bound(secondary.begin(), secondary.end(), z);
        for (auto it = after; it != secondary.end(); ++it) {
          if (rlu_[*it] < threshold) continue;
          next_secondary.push_back(*it);
          if (!config_.enable_subtree_pruning || rsu_[*it] >= threshold) {
            next_primary.push_back(*it);
          }
        }
        rlu_.reset();
        rsu_.reset();
        if (!next_primary.empty()) {
          search_p(ext.pdb, next_primary, next_secondary);
        }
      }

      track_live(-static_cast<std::int64_t>(ext.pdb.size()));
      prefix_.pop_back();
    }
  }

  void search_n(const ProjectedDatabase& pdb, std::span<const ItemId> eta) {
    for (std::size_t i = 0; i < eta.size(); ++i) {
      const ItemId z = eta[i];
      Extension ext = extend(pdb, z);
      if (ext.support == 0) continue;
      prefix_.push_back(z);
      evaluate(ext.utility);
      track_live(static_cast<std::int64_t>(ext.pdb.size()));

      if (!ext.pdb.empty() && i + 1 < eta.size()) {
        accumulate_rsu(ext.pdb, rsu_);
        const Utility threshold = store_.min_util();
        std::vector<ItemId> next;
        for (std::size_t j = i + 1; j < eta.size(); ++j) {
          if (rsu_[eta[j]] >= threshold) next.push_back(eta[j]);
        }
        rsu_.reset();
        if (!next.empty()) search_n(ext.pdb, next);
      }

      track_live(-static_cast<std::int64_t>(ext.pdb.size()));
      prefix_.pop_back();
    }
  }

  Extension extend(const ProjectedDatabase& pdb, ItemId z) {
    Extension ext = project(pdb, z, config_.enable_merging);
    ++stats_.projections;
    stats_.merges += ext.merges;
    stats_.merged_records += ext.pdb.owned_records();
    return ext;
  }

  void evaluate(Utility utility) {
    ++stats_.candidates;
    if (observer_ && observer_->on_candidate) {
      std::vector<ItemId> original(prefix_.size());
      std::transform(prefix_.begin(), prefix_.end(), original.begin(),
                     [&](ItemId r) { return order_.item_at(r); });
      observer_->on_candidate(original, utility);
    }
    const Utility before = store_.min_util();
    if (utility >= before) {
      store_.offer(prefix_, utility);
      if (store_.min_util() != before && observer_ && observer_->on_threshold) {
        observer_->on_threshold(store_.min_util());
      }
    }
  }

  void track_live(std::int64_t delta) {
    live_ += delta;
    stats_.peak_entries =
        std::max<std::uint64_t>(stats_.peak_entries,
                                static_cast<std::uint64_t>(live_));
  }

  const TotalOrder& order_;
  const MinerConfig& config_;
  TopKStore& store_;
  MineStats& stats_;
  const MineObserver* observer_;
  std::vector<ItemId> eta_;
  std::vector<ItemId> prefix_;
  UtilityArray rlu_;
  UtilityArray rsu_;
  std::int64_t live_ = 0;
};

}  // namespace

MineResult mine(const UtilityDatabase& db, const MinerConfig& config,
                const MineObserver* observer) {
  const auto start = std::chrono::steady_clock::now();
  if (config.k == 0) throw std::invalid_argument("k must be >= 1");

  MineResult result;
  TopKStore store(config.k);
  auto notify = [&](Utility before) {
    if (store.min_util() != before && observer && observer->on_threshold) {
      observer->on_threshold(store.min_util());
    }
  };
  if (observer && observer->on_threshold) observer->on_threshold(store.min_util());

  const auto summaries = compute_item_summaries(db);
  {
    const Utility before = store.min_util();
    store.raise_with_riu(compute_riu(db));
    notify(before);
  }
  Utility threshold = store.min_util();

  // Root local utilities equal RTWU; any item order gives the same sums.
  std::vector<ItemId> secondary;
  {
    UtilityArray rlu(db.item_count());
    accumulate_rlu(ProjectedDatabase::root(db), rlu);
    for (ItemId item : db.positive_items()) {
      if (rlu[item] >= threshold) secondary.push_back(item);
    }
  }
  // An itemset holding a negative item z is bounded by its positive part,
  // which is at most RTWU(z).
  std::vector<ItemId> negatives_kept;
  for (ItemId item : db.negative_items()) {
    if (summaries[item].rtwu >= threshold) negatives_kept.push_back(item);
  }

  const TotalOrder order = build_total_order(db, summaries);
  const UtilityDatabase remapped =
      remap_database(db, order, secondary, negatives_kept);

  ProjectedDatabase root = ProjectedDatabase::root(remapped);
  if (config.enable_merging) {
    std::size_t merges = 0;
    root = merge_identical(root, &merges);
    result.stats.merges += merges;
    result.stats.merged_records += root.owned_records();
  }

  auto to_ranks = [&](std::span<const ItemId> items) {
    std::vector<ItemId> ranks;
    for (ItemId item : items) ranks.push_back(order.rank(item));
    std::sort(ranks.begin(), ranks.end());
    return ranks;
  };
  const std::vector<ItemId> secondary_ranks = to_ranks(secondary);
  std::vector<ItemId> primary_ranks;
  {
    UtilityArray rsu(remapped.item_count());
    accumulate_rsu(root, rsu);
    for (ItemId r : secondary_ranks) {
      if (!config.enable_subtree_pruning || rsu[r] >= threshold) {
        primary_ranks.push_back(r);
      }
    }
  }

  Search search(remapped, order, config, store, result.stats, observer,
                to_ranks(negatives_kept));
  search.run(root, primary_ranks, secondary_ranks);

  for (RankedItemset& entry : store.results()) {
    for (ItemId& item : entry.items) item = order.item_at(item);
    std::sort(entry.items.begin(), entry.items.end());
    result.top_k.push_back(std::move(entry));
  }
  result.final_min_util = store.min_util();
  result.stats.runtime_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
  return result;
}

}  // namespace topic
