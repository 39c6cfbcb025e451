#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "topic/database.hpp"
#include "topic/topk_store.hpp"

namespace topic {

/// Ablation variants: both strategies, transaction merging only, subtree
/// (RSU) pruning only, neither.
enum class Variant { full, merge_only, subtree_only, none };

std::string_view variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);
inline constexpr Variant kAllVariants[] = {Variant::full, Variant::merge_only,
                                           Variant::subtree_only, Variant::none};

struct MinerConfig {
  std::size_t k = 1;
  bool enable_merging = true;
  bool enable_subtree_pruning = true;

  static MinerConfig for_variant(Variant v, std::size_t k);
  Variant variant() const;
};

struct MineStats {
  /// Itemsets whose exact utility was computed.
  std::uint64_t candidates = 0;
  std::uint64_t projections = 0;
  /// Pairs of views coalesced by transaction merging.
  std::uint64_t merges = 0;
  /// Coalesced records allocated over the run.
  std::uint64_t merged_records = 0;
  /// Maximum number of projected views alive at once.
  std::uint64_t peak_entries = 0;
  double runtime_ms = 0.0;
};

struct MineResult {
  /// Ranked results; items are dense ids of the input database, ascending.
  std::vector<RankedItemset> top_k;
  Utility final_min_util = 1;
  MineStats stats;
};

/// Optional instrumentation. Itemsets are reported as dense ids of the
/// input database in processing order.
struct MineObserver {
  std::function<void(std::span<const ItemId> itemset, Utility utility)>
      on_candidate;
  std::function<void(Utility min_util)> on_threshold;
};

/// Exact top-k high-utility itemsets of `db` (itemsets with utility >= 1).
/// Throws std::invalid_argument when config.k == 0.
MineResult mine(const UtilityDatabase& db, const MinerConfig& config,
                const MineObserver* observer = nullptr);

}  // namespace topic
