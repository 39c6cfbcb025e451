#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "topic/report.hpp"

using namespace topic;
using topic::testing::running_example;

TEST(Fingerprint, StableAndContentSensitive) {
  const std::string text = topic::testing::kRunningExampleSpmf;
  EXPECT_EQ(report::fingerprint(text), report::fingerprint(text));
  EXPECT_NE(report::fingerprint(text), report::fingerprint(text + "\n"));
  // FNV-1a 64 offset basis
  EXPECT_EQ(report::fingerprint(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(report::fingerprint("a"), "fnv1a64:af63dc4c8601ec8c");
}

TEST(MineJson, RunningExample) {
  const auto db = running_example();
  const auto config = MinerConfig::for_variant(Variant::full, 5);
  const auto j = report::mine_json({"ex.txt", "fnv1a64:0"}, db, config,
                                   mine(db, config));
  EXPECT_EQ(j["schema_version"], report::kSchemaVersion);
  EXPECT_EQ(j["command"], "mine");
  EXPECT_EQ(j["final_min_util"], 58);
  ASSERT_EQ(j["top_k"].size(), 5u);
  EXPECT_EQ(j["top_k"][1]["items"], nlohmann::json({2, 4}));
  EXPECT_EQ(j["top_k"][1]["utility"], 66);
  EXPECT_EQ(j["config"]["variant"], "full");
  EXPECT_TRUE(j["stats"].contains("candidates"));
}

TEST(ItemsetsText, Format) {
  const auto db = running_example();
  const auto r = mine(db, MinerConfig::for_variant(Variant::full, 2));
  EXPECT_EQ(report::itemsets_text(db, r.top_k), "4 #UTIL: 114\n2 4 #UTIL: 66\n");
}

TEST(Verify, RunningExamplePasses) {
  report::VerifyReport rep;
  const std::vector<std::size_t> ks{1, 3, 5, 10, 20};
  report::verify_database(running_example(), "example", ks, rep);
  EXPECT_EQ(rep.cases.size(), 20u);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.failures(), 0u);
  EXPECT_EQ(report::verify_json(rep)["passed"], true);
}

TEST(Verify, CorruptedMinerIsReported) {
  report::VerifyReport rep;
  const std::vector<std::size_t> ks{5};
  const report::MineFn broken = [](const UtilityDatabase& db,
                                   const MinerConfig& config) {
    auto r = mine(db, config);
    r.top_k.back().utility += 1;
    return r;
  };
  report::verify_database(running_example(), "example", ks, rep, broken);
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.failures(), 4u);
  const auto& diff = rep.cases.front().diff;
  ASSERT_EQ(diff.size(), 2u);
  EXPECT_EQ(diff[0].substr(0, 2), "- ");
  EXPECT_EQ(diff[1].substr(0, 2), "+ ");
}

TEST(Bench, DenseSyntheticDatabase) {
  const auto db = generate_synthetic({300, 12, 8, 1, 9, 0.25, 5});
  const std::vector<std::size_t> one{1000};
  const auto rows = report::run_bench(db, one, 2);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(report::bench_violations(rows).empty());
  const std::vector<std::size_t> two{100, 500};
  const auto more = report::run_bench(db, two, 3);
  ASSERT_EQ(more.size(), 8u);
  EXPECT_EQ(more[0].k, 100u);
  EXPECT_EQ(more[4].k, 500u);
  EXPECT_TRUE(report::bench_violations(more).empty());
  for (std::size_t i = 0; i < more.size(); ++i) {
    EXPECT_EQ(more[i].result.top_k, more[i / 4 * 4].result.top_k);
  }

  const std::string csv = report::bench_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "variant,k,candidates,projections,merges,merged_records,"
            "peak_entries,final_min_util,results,runtime_ms");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Bench, EmptyDatabase) {
  const std::vector<std::size_t> ks{3};
  const auto rows = report::run_bench(parse_spmf(""), ks, 1);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) EXPECT_EQ(row.result.stats.candidates, 0u);
}

TEST(Bench, ViolationsAreDetected) {
  std::vector<report::BenchRow> rows;
  for (Variant v : kAllVariants) {
    report::BenchRow row;
    row.variant = v;
    row.k = 1;
    row.result.stats.candidates = v == Variant::full ? 10 : 5;
    rows.push_back(row);
  }
  EXPECT_FALSE(report::bench_violations(rows).empty());
}

TEST(CampaignParams, DeskScale) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p = report::campaign_params(seed);
    EXPECT_LE(p.items, 10u);
    EXPECT_LE(p.transactions, 25u);
    EXPECT_LE(p.avg_len, p.items);
    EXPECT_NO_THROW(generate_synthetic(p));
  }
}
