#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "topic/database.hpp"
#include "topic/topk_store.hpp"

namespace topic::oracle {

// Exhaustive reference implementation. Shares only the data model with the
// miner: no projection, bounds or top-k store code is used here.

class TooManyItems : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxItems = 24;

/// U(X): sum over transactions containing every item of X of the utilities
/// of X's items. `itemset` holds dense ids in any order.
Utility utility_of(const UtilityDatabase& db, std::span<const ItemId> itemset);

struct OracleResult {
  /// Same ranking as the miner; items are dense ids, ascending.
  std::vector<RankedItemset> top_k;
  /// Every supported itemset (ascending dense ids) with its utility.
  std::optional<std::map<std::vector<ItemId>, Utility>> all_utilities;
};

/// Enumerates every supported nonempty itemset, keeps those with utility
/// >= 1, ranks them by utility descending then by processing-order rank
/// sequence, and truncates to k. Throws TooManyItems when more than
/// kMaxItems items occur in `db`.
OracleResult enumerate_topk(const UtilityDatabase& db, std::size_t k,
                            bool keep_all = false);

/// Processing-order rank per item (positives first, RTWU ascending, raw
/// label tie-break), computed directly from the transactions.
std::vector<std::size_t> processing_ranks(const UtilityDatabase& db);

}  // namespace topic::oracle
