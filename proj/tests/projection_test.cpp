#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "test_support.hpp"
#include "topic/projection.hpp"

using namespace topic;
using topic::testing::running_example;

namespace {

struct Fixture {
  UtilityDatabase db = running_example();
  TotalOrder order = build_total_order(db, compute_item_summaries(db));
  UtilityDatabase remapped =
      remap_database(db, order, db.positive_items(), db.negative_items());

  ItemId rank(ItemLabel label) const { return order.rank(*db.find_label(label)); }
};

constexpr ItemLabel A = 1, B = 2, C = 3, D = 4, E = 5;

std::vector<std::pair<ItemId, Utility>> pairs(std::span<const ItemUtility> s) {
  std::vector<std::pair<ItemId, Utility>> out;
  for (const auto& iu : s) out.emplace_back(iu.item, iu.utility);
  return out;
}

}  // namespace

TEST(TotalOrder, RunningExample) {
  Fixture f;
  std::vector<ItemLabel> by_rank;
  for (ItemId item : f.order.items_by_rank()) by_rank.push_back(f.db.label(item));
  EXPECT_EQ(by_rank, (std::vector<ItemLabel>{E, A, D, B, C}));
  EXPECT_EQ(f.order.positive_cutoff(), 3u);
  for (ItemId r = 0; r < 5; ++r) EXPECT_EQ(f.order.rank(f.order.item_at(r)), r);
}

TEST(TotalOrder, SingleItemIsIdentity) {
  const auto db = parse_spmf("9:3:3");
  const auto order = build_total_order(db, compute_item_summaries(db));
  EXPECT_EQ(order.size(), 1u);
  EXPECT_EQ(order.rank(0), 0u);
}

TEST(TotalOrder, EqualRtwuFallsBackToLabels) {
  const auto db = parse_spmf("30 10 20:6:2 2 2\n");
  const auto order = build_total_order(db, compute_item_summaries(db));
  std::vector<ItemLabel> by_rank;
  for (ItemId item : order.items_by_rank()) by_rank.push_back(db.label(item));
  EXPECT_EQ(by_rank, (std::vector<ItemLabel>{10, 20, 30}));
}

TEST(TransactionOrder, BackwardLexicographic) {
  const std::vector<ItemUtility> tx{{0, 1}, {1, 1}, {2, 1}};  // {a,b,c}
  const std::vector<ItemUtility> ty{{0, 1}, {1, 1}, {4, 1}};  // {a,b,e}
  const std::vector<ItemUtility> tz{{0, 1}, {1, 1}};          // {a,b}
  EXPECT_TRUE(transaction_order_less(tz, tx));
  EXPECT_TRUE(transaction_order_less(tx, ty));
  EXPECT_TRUE(transaction_order_less(tz, ty));
  EXPECT_FALSE(transaction_order_less(ty, tx));
  EXPECT_FALSE(transaction_order_less(tx, tx));
}

TEST(RemapDatabase, RunningExample) {
  Fixture f;
  ASSERT_EQ(f.remapped.size(), 6u);
  std::vector<std::uint64_t> tids;
  for (const auto& t : f.remapped.transactions()) {
    tids.push_back(t.tid);
    for (std::size_t i = 1; i < t.items.size(); ++i) {
      EXPECT_LT(t.items[i - 1].item, t.items[i].item);
    }
  }
  // backward keys: T4 (A,E) < T3 (D,A) < T1 (D,A,E) < T6 (C,B,E) < T2 = T5
  EXPECT_EQ(tids, (std::vector<std::uint64_t>{4, 3, 1, 6, 2, 5}));
  for (ItemId r = 0; r < 5; ++r) {
    EXPECT_EQ(f.remapped.label(r), f.db.label(f.order.item_at(r)));
  }
  EXPECT_TRUE(f.remapped.is_positive(0));
  EXPECT_FALSE(f.remapped.is_positive(3));
}

TEST(RemapDatabase, RemovesItemsAndEmptyTransactions) {
  Fixture f;
  EXPECT_TRUE(remap_database(f.db, f.order, {}, {}).empty());
  const std::vector<ItemId> keep{*f.db.find_label(E)};
  const auto only_e = remap_database(f.db, f.order, keep, {});
  ASSERT_EQ(only_e.size(), 3u);
  for (const auto& t : only_e.transactions()) {
    ASSERT_EQ(t.items.size(), 1u);
    EXPECT_EQ(t.tu, t.items[0].utility);
  }
}

TEST(Project, RootOnA) {
  Fixture f;
  const auto root = ProjectedDatabase::root(f.remapped);
  const Extension ext = project(root, f.rank(A), false);
  EXPECT_EQ(ext.utility, 25);
  EXPECT_EQ(ext.support, 3u);
  // T4's suffix after A is empty, so only T3 and T1 remain (in that order)
  ASSERT_EQ(ext.pdb.size(), 2u);
  const auto& v0 = ext.pdb.views()[0];
  const auto& v1 = ext.pdb.views()[1];
  EXPECT_EQ(v0.prefix_utility, 15);
  EXPECT_EQ(v1.prefix_utility, 5);
  using P = std::vector<std::pair<ItemId, Utility>>;
  EXPECT_EQ(pairs(v0.suffix()), (P{{f.rank(D), 30}}));
  EXPECT_EQ(pairs(v1.suffix()), (P{{f.rank(D), 12}}));

  const Extension ad = project(ext.pdb, f.rank(D), false);
  EXPECT_EQ(ad.utility, 62);
  EXPECT_EQ(ad.support, 2u);
  EXPECT_TRUE(ad.pdb.empty());
}

TEST(Project, AbsentItemGivesEmptyDatabase) {
  Fixture f;
  const auto root = ProjectedDatabase::root(f.remapped);
  const Extension ea = project(root, f.rank(E), false);
  const Extension ext = project(project(ea.pdb, f.rank(A), false).pdb, f.rank(B), false);
  EXPECT_EQ(ext.utility, 0);
  EXPECT_EQ(ext.support, 0u);
  EXPECT_TRUE(ext.pdb.empty());
}

TEST(MergeIdentical, FullTransactionsT2AndT5) {
  Fixture f;
  const auto root = ProjectedDatabase::root(f.remapped);
  std::size_t merges = 0;
  const auto merged = merge_identical(root, &merges);
  EXPECT_EQ(merges, 1u);
  ASSERT_EQ(merged.size(), 5u);
  EXPECT_EQ(merged.owned_records(), 1u);
  const auto& last = merged.views().back();
  EXPECT_EQ(last.weight, 2u);
  using P = std::vector<std::pair<ItemId, Utility>>;
  EXPECT_EQ(pairs(last.suffix()),
            (P{{f.rank(D), 72}, {f.rank(B), -6}, {f.rank(C), -8}}));
}

TEST(MergeIdentical, EmptySuffixesNeverSurviveProjection) {
  Fixture f;
  const auto root = ProjectedDatabase::root(f.remapped);
  const Extension ext = project(root, f.rank(A), true);
  for (const auto& v : ext.pdb.views()) EXPECT_FALSE(v.suffix().empty());
}

TEST(MergeIdentical, ProjectionOnDCoalescesT2AndT5) {
  Fixture f;
  const auto root = ProjectedDatabase::root(f.remapped);
  const Extension ext = project(root, f.rank(D), true);
  EXPECT_EQ(ext.utility, 114);
  EXPECT_EQ(ext.support, 4u);
  EXPECT_EQ(ext.merges, 1u);
  ASSERT_EQ(ext.pdb.size(), 1u);
  EXPECT_EQ(ext.pdb.views()[0].prefix_utility, 72);
  EXPECT_EQ(ext.pdb.views()[0].prefix_positive, 72);
  EXPECT_EQ(ext.pdb.views()[0].weight, 2u);
}

TEST(MergeIdentical, NoIdenticalSuffixesIsIdentity) {
  const auto db = parse_spmf("1:1:1\n2:1:1\n1 2:2:1 1\n");
  const auto order = build_total_order(db, compute_item_summaries(db));
  const auto remapped =
      remap_database(db, order, db.positive_items(), db.negative_items());
  const auto root = ProjectedDatabase::root(remapped);
  std::size_t merges = 7;
  const auto merged = merge_identical(root, &merges);
  EXPECT_EQ(merges, 0u);
  ASSERT_EQ(merged.size(), root.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    EXPECT_EQ(pairs(merged.views()[i].suffix()), pairs(root.views()[i].suffix()));
  }
}

namespace {

// Walks every projection path, checking exact utilities against the brute
// force table, suffix adjacency, and view counts.
void walk(const TotalOrder& order, const topic::testing::UtilityTable& table,
          const ProjectedDatabase& pdb, std::uint32_t alpha, ItemId first,
          bool merge) {
  std::map<std::vector<ItemId>, std::vector<std::size_t>> positions;
  for (std::size_t i = 0; i < pdb.size(); ++i) {
    std::vector<ItemId> items;
    for (const auto& iu : pdb.views()[i].suffix()) items.push_back(iu.item);
    positions[items].push_back(i);
  }
  for (const auto& [items, where] : positions) {
    EXPECT_EQ(where.back() - where.front() + 1, where.size())
        << "identical suffixes are not adjacent";
    if (merge) EXPECT_EQ(where.size(), 1u);
  }
  for (ItemId r = first; r < order.size(); ++r) {
    const Extension ext = project(pdb, r, merge);
    const std::uint32_t beta = alpha | 1u << order.item_at(r);
    EXPECT_EQ(ext.utility, table.utility(beta));
    EXPECT_LE(ext.pdb.size(), pdb.size());
    if (ext.support == 0) continue;
    walk(order, table, ext.pdb, beta, r + 1, merge);
  }
}

}  // namespace

TEST(ProjectionProperties, RandomDatabases) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto db = topic::testing::campaign_db(seed);
    const auto order = build_total_order(db, compute_item_summaries(db));
    const auto remapped =
        remap_database(db, order, db.positive_items(), db.negative_items());
    const topic::testing::UtilityTable table(db);
    for (bool merge : {false, true}) {
      SCOPED_TRACE("seed " + std::to_string(seed) + (merge ? " merged" : ""));
      auto root = ProjectedDatabase::root(remapped);
      if (merge) {
        auto merged = merge_identical(root);
        EXPECT_LE(merged.size(), root.size());
        walk(order, table, merged, 0, 0, true);
      } else {
        walk(order, table, root, 0, 0, false);
      }
    }
  }
}
