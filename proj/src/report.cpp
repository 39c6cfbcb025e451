#include "topic/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "topic/oracle.hpp"

namespace topic::report {

std::string fingerprint(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + buf;
}

namespace {

std::vector<ItemLabel> sorted_labels(const UtilityDatabase& db,
                                     std::span<const ItemId> items) {
  std::vector<ItemLabel> labels;
  labels.reserve(items.size());
  for (ItemId x : items) labels.push_back(db.label(x));
  std::sort(labels.begin(), labels.end());
  return labels;
}

}  // namespace

nlohmann::json dataset_json(const DatasetInfo& info, const UtilityDatabase& db) {
  return {{"path", info.path},
          {"fingerprint", info.fingerprint},
          {"transactions", db.size()},
          {"items", db.item_count()},
          {"positive_items", db.positive_items().size()},
          {"negative_items", db.negative_items().size()}};
}

nlohmann::json config_json(const MinerConfig& config) {
  return {{"k", config.k},
          {"variant", std::string(variant_name(config.variant()))},
          {"enable_merging", config.enable_merging},
          {"enable_subtree_pruning", config.enable_subtree_pruning}};
}

nlohmann::json stats_json(const MineStats& s) {
  return {{"candidates", s.candidates},
          {"projections", s.projections},
          {"merges", s.merges},
          {"merged_records", s.merged_records},
          {"peak_entries", s.peak_entries},
          {"runtime_ms", s.runtime_ms}};
}

nlohmann::json itemsets_json(const UtilityDatabase& db,
                             std::span<const RankedItemset> itemsets) {
  auto out = nlohmann::json::array();
  for (const auto& entry : itemsets) {
    out.push_back({{"items", sorted_labels(db, entry.items)},
                   {"utility", entry.utility}});
  }
  return out;
}

nlohmann::json mine_json(const DatasetInfo& info, const UtilityDatabase& db,
                         const MinerConfig& config, const MineResult& result) {
  return {{"schema_version", kSchemaVersion},
          {"command", "mine"},
          {"dataset", dataset_json(info, db)},
          {"config", config_json(config)},
          {"top_k", itemsets_json(db, result.top_k)},
          {"final_min_util", result.final_min_util},
          {"stats", stats_json(result.stats)}};
}

std::string itemsets_text(const UtilityDatabase& db,
                          std::span<const RankedItemset> itemsets) {
  std::ostringstream out;
  for (const auto& entry : itemsets) {
    const auto labels = sorted_labels(db, entry.items);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) out << ' ';
      out << labels[i];
    }
    out << " #UTIL: " << entry.utility << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(),
                    [](const VerifyCase& c) { return !c.passed; }));
}

namespace {

using Keyed = std::set<std::pair<std::vector<ItemLabel>, Utility>>;

Keyed keyed(const UtilityDatabase& db, std::span<const RankedItemset> list) {
  Keyed out;
  for (const auto& e : list) out.insert({sorted_labels(db, e.items), e.utility});
  return out;
}

std::string describe(const std::pair<std::vector<ItemLabel>, Utility>& e) {
  std::ostringstream s;
  s << '{';
  for (std::size_t i = 0; i < e.first.size(); ++i) {
    if (i) s << ',';
    s << e.first[i];
  }
  s << "}:" << e.second;
  return s.str();
}

}  // namespace

void verify_database(const UtilityDatabase& db, const std::string& name,
                     std::span<const std::size_t> ks, VerifyReport& report,
                     const MineFn& miner) {
  const MineFn run = miner ? miner : MineFn([](const UtilityDatabase& d,
                                               const MinerConfig& c) {
    return mine(d, c);
  });
  for (std::size_t k : ks) {
    const auto expected = keyed(db, oracle::enumerate_topk(db, k).top_k);
    for (Variant v : kAllVariants) {
      const MineResult got = run(db, MinerConfig::for_variant(v, k));
      const auto actual = keyed(db, got.top_k);
      VerifyCase c{name, k, v, actual == expected, {}};
      for (const auto& e : expected) {
        if (!actual.count(e)) c.diff.push_back("- " + describe(e));
      }
      for (const auto& e : actual) {
        if (!expected.count(e)) c.diff.push_back("+ " + describe(e));
      }
      report.cases.push_back(std::move(c));
    }
  }
}

SyntheticParams campaign_params(std::uint64_t seed) {
  static constexpr double kFractions[] = {0.0, 0.3, 0.6};
  SyntheticParams p;
  p.seed = seed;
  p.items = 2 + seed % 9;                        // 2..10
  p.transactions = 1 + (seed * 7) % 25;          // 1..25
  p.avg_len = 1 + (seed / 3) % std::min<std::size_t>(p.items, 5);
  p.min_utility = 1;
  p.max_utility = 9;
  p.negative_fraction = kFractions[seed % 3];
  return p;
}

nlohmann::json verify_json(const VerifyReport& report) {
  auto cases = nlohmann::json::array();
  for (const auto& c : report.cases) {
    if (c.passed) continue;
    cases.push_back({{"database", c.database},
                     {"k", c.k},
                     {"variant", std::string(variant_name(c.variant))},
                     {"diff", c.diff}});
  }
  return {{"schema_version", kSchemaVersion},
          {"command", "verify"},
          {"cases", report.cases.size()},
          {"failures", report.failures()},
          {"passed", report.passed()},
          {"failed_cases", cases}};
}

// ---------------------------------------------------------------------------

std::vector<BenchRow> run_bench(const UtilityDatabase& db,
                                std::span<const std::size_t> ks,
                                std::size_t threads) {
  std::vector<BenchRow> rows;
  for (std::size_t k : ks) {
    for (Variant v : kAllVariants) rows.push_back({v, k, {}});
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      rows[i].result = mine(db, MinerConfig::for_variant(rows[i].variant, rows[i].k));
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(threads, rows.size()));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  return rows;
}

std::vector<std::string> bench_violations(std::span<const BenchRow> rows) {
  std::map<std::size_t, std::map<Variant, std::uint64_t>> by_k;
  for (const auto& r : rows) by_k[r.k][r.variant] = r.result.stats.candidates;
  std::vector<std::string> out;
  for (const auto& [k, c] : by_k) {
    auto get = [&](Variant v) -> std::optional<std::uint64_t> {
      const auto it = c.find(v);
      if (it == c.end()) return std::nullopt;
      return it->second;
    };
    const auto full = get(Variant::full);
    const auto merge = get(Variant::merge_only);
    const auto subtree = get(Variant::subtree_only);
    const auto none = get(Variant::none);
    const std::string at = " at k=" + std::to_string(k);
    if (full && subtree && *full != *subtree) {
      out.push_back("candidates(full) != candidates(subtree-only)" + at);
    }
    if (merge && none && *merge != *none) {
      out.push_back("candidates(merge-only) != candidates(none)" + at);
    }
    if (full && none && *full > *none) {
      out.push_back("candidates(full) > candidates(none)" + at);
    }
  }
  return out;
}

std::string bench_csv(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out << "variant,k,candidates,projections,merges,merged_records,"
         "peak_entries,final_min_util,results,runtime_ms\n";
  for (const auto& r : rows) {
    const auto& s = r.result.stats;
    out << variant_name(r.variant) << ',' << r.k << ',' << s.candidates << ','
        << s.projections << ',' << s.merges << ',' << s.merged_records << ','
        << s.peak_entries << ',' << r.result.final_min_util << ','
        << r.result.top_k.size() << ',' << s.runtime_ms << '\n';
  }
  return out.str();
}

nlohmann::json bench_json(const DatasetInfo& info, const UtilityDatabase& db,
                          std::span<const BenchRow> rows) {
  auto out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"config", config_json(MinerConfig::for_variant(r.variant, r.k))},
                   {"final_min_util", r.result.final_min_util},
                   {"results", r.result.top_k.size()},
                   {"stats", stats_json(r.result.stats)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"command", "bench"},
          {"dataset", dataset_json(info, db)},
          {"runs", out},
          {"violations", bench_violations(rows)}};
}

std::size_t bench_threads_from_env() {
  if (const char* env = std::getenv("TOPIC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace topic::report
