#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "topic/database.hpp"
#include "topic/miner.hpp"

namespace topic::report {

/// Version of the JSON report layout (see docs/report-schema.md).
inline constexpr int kSchemaVersion = 1;

/// Content hash of a dataset file, "fnv1a64:<16 hex digits>".
std::string fingerprint(std::string_view bytes);

struct DatasetInfo {
  std::string path;
  std::string fingerprint;
};

nlohmann::json dataset_json(const DatasetInfo& info, const UtilityDatabase& db);
nlohmann::json config_json(const MinerConfig& config);
nlohmann::json stats_json(const MineStats& stats);
/// Itemsets as ascending raw labels.
nlohmann::json itemsets_json(const UtilityDatabase& db,
                             std::span<const RankedItemset> itemsets);
nlohmann::json mine_json(const DatasetInfo& info, const UtilityDatabase& db,
                         const MinerConfig& config, const MineResult& result);

/// Human-readable listing: one "labels #UTIL: value" line per itemset.
std::string itemsets_text(const UtilityDatabase& db,
                          std::span<const RankedItemset> itemsets);

// ---------------------------------------------------------------------------
// Verification against the exhaustive oracle.

using MineFn =
    std::function<MineResult(const UtilityDatabase&, const MinerConfig&)>;

struct VerifyCase {
  std::string database;
  std::size_t k = 0;
  Variant variant = Variant::full;
  bool passed = false;
  /// "-" lines are expected but missing, "+" lines are unexpected.
  std::vector<std::string> diff;
};

struct VerifyReport {
  std::vector<VerifyCase> cases;

  bool passed() const;
  std::size_t failures() const;
};

/// Runs every variant for every k and compares (itemset, utility) sets with
/// the oracle. Propagates oracle::TooManyItems.
void verify_database(const UtilityDatabase& db, const std::string& name,
                     std::span<const std::size_t> ks, VerifyReport& report,
                     const MineFn& miner = {});

/// Parameters of the random desk-scale campaign: at most 10 items, at most
/// 25 transactions, utility magnitudes 1..9, negative fraction cycling
/// through 0, 0.3 and 0.6.
SyntheticParams campaign_params(std::uint64_t seed);

nlohmann::json verify_json(const VerifyReport& report);

// ---------------------------------------------------------------------------
// Ablation benchmark.

struct BenchRow {
  Variant variant = Variant::full;
  std::size_t k = 0;
  MineResult result;
};

/// Runs every variant for every k, up to `threads` runs at a time. Rows are
/// ordered by k, then by variant.
std::vector<BenchRow> run_bench(const UtilityDatabase& db,
                                std::span<const std::size_t> ks,
                                std::size_t threads);

/// Candidate-count invariants per k: full == subtree-only,
/// merge-only == none, full <= none. Returns one message per violation.
std::vector<std::string> bench_violations(std::span<const BenchRow> rows);

std::string bench_csv(std::span<const BenchRow> rows);
nlohmann::json bench_json(const DatasetInfo& info, const UtilityDatabase& db,
                          std::span<const BenchRow> rows);

/// TOPIC_THREADS when set to a positive integer, otherwise the hardware
/// concurrency (at least 1).
std::size_t bench_threads_from_env();

}  // namespace topic::report
