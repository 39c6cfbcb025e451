#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "test_support.hpp"
#include "topic/oracle.hpp"

using namespace topic;
using topic::testing::running_example;

namespace {

std::vector<ItemId> ids(const UtilityDatabase& db, std::vector<ItemLabel> labels) {
  std::vector<ItemId> out;
  for (ItemLabel l : labels) out.push_back(*db.find_label(l));
  return out;
}

}  // namespace

TEST(UtilityOf, RunningExample) {
  const auto db = running_example();
  EXPECT_EQ(oracle::utility_of(db, ids(db, {1, 4})), 62);
  EXPECT_EQ(oracle::utility_of(db, ids(db, {4, 1})), 62);
  EXPECT_EQ(oracle::utility_of(db, ids(db, {5})), 40);
  EXPECT_EQ(oracle::utility_of(db, ids(db, {2, 4})), 66);
  EXPECT_EQ(oracle::utility_of(db, ids(db, {1, 2})), 0);
}

TEST(EnumerateTopk, RunningExample) {
  const auto db = running_example();
  const auto r = oracle::enumerate_topk(db, 5, true);
  std::vector<Utility> utilities;
  for (const auto& e : r.top_k) utilities.push_back(e.utility);
  EXPECT_EQ(utilities, (std::vector<Utility>{114, 66, 64, 62, 58}));
  EXPECT_EQ(r.top_k[1].items, ids(db, {2, 4}));
  ASSERT_TRUE(r.all_utilities.has_value());
  for (const auto& [items, u] : *r.all_utilities) {
    EXPECT_EQ(oracle::utility_of(db, items), u);
  }
  EXPECT_FALSE(oracle::enumerate_topk(db, 5).all_utilities.has_value());
}

TEST(EnumerateTopk, KLargerThanResultCount) {
  const auto db = running_example();
  const auto all = oracle::enumerate_topk(db, 1000, true);
  std::size_t positive = 0;
  for (const auto& [items, u] : *all.all_utilities) positive += u >= 1;
  EXPECT_EQ(all.top_k.size(), positive);
  EXPECT_LT(positive, all.all_utilities->size());
}

TEST(EnumerateTopk, SingleTransaction) {
  const auto db = parse_spmf("7:7:7");
  const auto r = oracle::enumerate_topk(db, 3);
  ASSERT_EQ(r.top_k.size(), 1u);
  EXPECT_EQ(r.top_k[0].utility, 7);
}

TEST(EnumerateTopk, TooManyItems) {
  std::string line;
  std::string utils;
  for (int i = 1; i <= 25; ++i) {
    line += (i > 1 ? " " : "") + std::to_string(i);
    utils += (i > 1 ? " " : "") + std::string("1");
  }
  const auto db = parse_spmf(line + ":25:" + utils);
  EXPECT_THROW(oracle::enumerate_topk(db, 1), oracle::TooManyItems);
}

TEST(ProcessingRanks, RunningExample) {
  const auto db = running_example();
  // E, A, D, B, C
  EXPECT_EQ(oracle::processing_ranks(db), (std::vector<std::size_t>{1, 3, 4, 2, 0}));
}
