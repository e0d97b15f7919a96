#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <vector>

#include "irc/datagen.hpp"
#include "irc/fenwick_model.hpp"
#include "irc/linear_model.hpp"
#include "irc/search.hpp"
#include "irc/selftest.hpp"
#include "oracles.hpp"

using namespace irc;

namespace {

const std::vector<Count> kToy{3, 2, 1, 4};

LinearModel toy() { return LinearModel::from_counts(kToy); }

TEST(LinearSearch, Backward) {
  const auto m = toy();
  EXPECT_EQ(search_linear_backward(4, m).symbol, 1u);
  EXPECT_EQ(search_linear_backward(9, m).symbol, 3u);
  EXPECT_EQ(search_linear_backward(0, m).symbol, 0u);
  for (Count c = 0; c < m.total(); ++c) {
    const auto hit = search_linear_backward(c, m);
    EXPECT_EQ(hit.probes, 4 - hit.symbol);
  }
}

TEST(LinearSearch, Forward) {
  const auto m = toy();
  EXPECT_EQ(search_linear_forward(0, m).symbol, 0u);
  EXPECT_EQ(search_linear_forward(0, m).probes, 1u);
  EXPECT_EQ(search_linear_forward(5, m).symbol, 2u);
  EXPECT_EQ(search_linear_forward(9, m).symbol, 3u);
  EXPECT_EQ(search_linear_forward(9, m).probes, 4u);
}

TEST(LogSearch, Basics) {
  EXPECT_EQ(search_logarithmic(5, toy()).symbol, 2u);
  const auto one = LinearModel::flat(1);
  EXPECT_EQ(search_logarithmic(0, one).symbol, 0u);
  EXPECT_EQ(search_logarithmic(0, one).probes, 1u);
}

TEST(LogSearch, FlatSixtyFourUsesSixOrSevenIterations) {
  const auto m = LinearModel::flat(64);
  for (Count c = 0; c < 64; ++c) {
    const auto hit = search_logarithmic(c, m);
    EXPECT_EQ(hit.symbol, c);
    EXPECT_EQ(hit.probes, c == 0 ? 7u : 6u) << c;
  }
}

TEST(LogSearch, IterationBound) {
  std::mt19937_64 rng(2);
  for (std::size_t K : {1u, 2u, 3u, 19u, 100u, 1000u}) {
    const auto m = LinearModel::from_counts(oracle::random_counts(rng, K, 1, 9));
    const unsigned bound = std::bit_width(K - 1) + 1;  // ceil(log2 K) + 1
    for (Count c = 0; c < m.total(); ++c) EXPECT_LE(search_logarithmic(c, m).probes, bound);
  }
}

TEST(BestSplit, Examples) {
  EXPECT_EQ(best_split(LinearModel::flat(8), 0, 8), 4u);
  EXPECT_EQ(best_split(toy(), 0, 4), 2u);
  EXPECT_EQ(best_split(toy(), 1, 3), 2u);
}

TEST(BestSplit, MatchesEnumeration) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t K = 2 + trial % 70;
    // zero counts create plateaus that exercise the tie rule
    const auto h = oracle::random_counts(rng, K, trial % 3 == 0 ? 0 : 1, 6);
    const auto hk = oracle::prefix_sums(h);
    const auto m = LinearModel::from_counts(h);
    for (std::size_t b = 0; b + 2 <= K; ++b) {
      for (std::size_t t = b + 2; t <= K; ++t) {
        ASSERT_EQ(best_split(m, b, t), oracle::best_split(hk, b, t)) << b << "," << t;
      }
    }
  }
}

void check_bst(const SearchTree& tree, std::int32_t node, std::vector<std::size_t>& order) {
  if (node == kNoChild) return;
  check_bst(tree, tree.left[node], order);
  order.push_back(static_cast<std::size_t>(node));
  check_bst(tree, tree.right[node], order);
}

TEST(TreeSearch, FlatFourShape) {
  const auto m = LinearModel::flat(4);
  const auto tree = build_search_tree(m);
  EXPECT_EQ(tree.root, 2);
  EXPECT_EQ(tree.left[2], 1);
  EXPECT_EQ(tree.left[1], 0);
  EXPECT_EQ(tree.right[2], 3);
  EXPECT_EQ(tree.right[1], kNoChild);
  const auto hit = search_tree(0, m, tree);
  EXPECT_EQ(hit.symbol, 0u);
  EXPECT_EQ(hit.probes, 3u);
  EXPECT_EQ(search_tree(2, m, tree).probes, 1u);  // boundary hit on the root
}

TEST(TreeSearch, SingleSymbol) {
  const auto m = LinearModel::flat(1);
  const auto tree = build_search_tree(m);
  EXPECT_EQ(tree.root, 0);
  EXPECT_EQ(tree.left[0], kNoChild);
  EXPECT_EQ(tree.right[0], kNoChild);
  EXPECT_EQ(search_tree(0, m, tree).symbol, 0u);
}

TEST(TreeSearch, GeometricRootIsFour) {
  const auto symbols = gen_sequence({Distribution::geometric, 64, 1'000'000, 7});
  std::vector<Count> h(64, 0);
  for (auto s : symbols) ++h[s];
  for (auto& c : h) c = std::max<Count>(1, c / 16);
  const auto tree = build_search_tree(LinearModel::from_counts(h));
  EXPECT_EQ(tree.root, 4);
}

TEST(TreeSearch, InOrderVisitsEverySymbol) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t K = 1 + trial * 7;
    const auto h = oracle::random_counts(rng, K, 1, 50);
    const auto m = LinearModel::from_counts(h);
    const auto tree = build_search_tree(m);
    std::vector<std::size_t> order;
    check_bst(tree, tree.root, order);
    ASSERT_EQ(order.size(), K);
    for (std::size_t i = 0; i < K; ++i) ASSERT_EQ(order[i], i);
  }
}

TEST(InitialSplit, Determine) {
  EXPECT_EQ(determine_initial_split(LinearModel::flat(64)), 32u);
  EXPECT_EQ(determine_initial_split(toy()), 2u);
  EXPECT_EQ(determine_initial_split(LinearModel::flat(1)), 1u);
}

TEST(InitialSplit, Adapt) {
  EXPECT_EQ(adapt_initial_split(64, 5, 9), 4u);
  EXPECT_EQ(adapt_initial_split(64, 0, 3), 0u);
  EXPECT_EQ(adapt_initial_split(64, 5, 2), 6u);
  EXPECT_EQ(adapt_initial_split(8, 8, 2), 8u);
}

TEST(Log2Search, FromDeterminedSplitMatchesLogOnFlatData) {
  const auto m = LinearModel::flat(64);
  const auto mid = determine_initial_split(m);
  for (Count c = 0; c < 64; ++c) {
    EXPECT_EQ(search_log2(c, m, mid).symbol, c);
    EXPECT_EQ(search_log2(c, m, mid).probes, search_logarithmic(c, m).probes);
  }
}

TEST(Log2Search, SmallAlphabet) {
  const auto m = LinearModel::from_counts(std::vector<Count>{2, 3});
  for (std::size_t mid = 0; mid <= 2; ++mid) {
    for (Count c = 0; c < 5; ++c) {
      const auto hit = search_log2(c, m, mid);
      EXPECT_EQ(hit.symbol, c < 2 ? 0u : 1u);
      // an edge first probe (0 or K) is always wasted
      EXPECT_LE(hit.probes, 3u);
    }
  }
}

TEST(ExponentialSearch, Examples) {
  const auto m = toy();
  EXPECT_EQ(search_exponential(0, m).symbol, 0u);
  const auto hit = search_exponential(9, m);
  EXPECT_EQ(hit.symbol, 3u);
  // doubling probes at 1 and 2, top clamps to K = 4; one bisection probe at 3
  EXPECT_EQ(hit.probes, 2u + 1u);

  const auto m19 = LinearModel::from_counts(fixtures::kHierarchyCounts);
  EXPECT_EQ(search_exponential(m19.total() - 1, m19).symbol, 18u);
}

TEST(TableSearch, CreateAndLookup) {
  const auto table = table_create(toy());
  EXPECT_EQ(std::vector<Symbol>(table.t.begin(), table.t.begin() + 10),
            std::vector<Symbol>(fixtures::kToyTable.begin(), fixtures::kToyTable.end()));
  EXPECT_EQ(table_lookup(5, table).symbol, 2u);
  EXPECT_EQ(table_lookup(0, table).symbol, 0u);
  EXPECT_EQ(table_lookup(9, table).symbol, 3u);
  EXPECT_EQ(table_lookup(9, table).probes, 1u);

  EXPECT_EQ(table_create(LinearModel::from_counts(std::vector<Count>{1, 1})).t,
            (std::vector<Symbol>{0, 1}));
  const auto skip = table_create(LinearModel::from_counts(std::vector<Count>{0, 2}));
  EXPECT_EQ(skip.t, (std::vector<Symbol>{1, 1}));
  EXPECT_THROW((void)table_create(LinearModel::from_counts(std::vector<Count>{0, 0})), Error);
}

TEST(TableSearch, UpdateFixture) { EXPECT_TRUE(fixtures::toy_table_fixture()); }

TEST(TableSearch, UpdateLastSymbolWritesOnce) {
  auto m = toy();
  auto table = table_create(m, 16);
  m.update(3);
  EXPECT_EQ(table_update(table, m, 3), 1u);
  EXPECT_EQ(table.t[10], 3u);
}

TEST(TableSearch, UpdateMatchesRebuild) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t K = 1 + trial % 17;
    auto m = LinearModel::from_counts(oracle::random_counts(rng, K, 1, 5));
    auto table = table_create(m, 2000);
    std::uniform_int_distribution<std::size_t> pick(0, K - 1);
    for (int step = 0; step < 100; ++step) {
      const auto s = pick(rng);
      m.update(s);
      table_update(table, m, s);
      const auto fresh = table_create(m);
      ASSERT_TRUE(std::equal(fresh.t.begin(), fresh.t.end(), table.t.begin()));
    }
  }
}

TEST(TableSearch, CapacityExhausted) {
  auto m = toy();
  auto table = table_create(m);
  m.update(0);
  EXPECT_THROW(table_update(table, m, 0), Error);
}

TEST(BiSearch, HierarchyFixture) {
  const auto m = FenwickModel::from_counts(fixtures::kHierarchyCounts);
  const auto hit = search_bi(37, m);
  EXPECT_EQ(hit.symbol, 16u);
  EXPECT_EQ(hit.lower, 37u);
  EXPECT_EQ(search_bi(0, m).symbol, 0u);
  EXPECT_EQ(search_bi(0, m).lower, 0u);
  const oracle::Counts h(fixtures::kHierarchyCounts.begin(), fixtures::kHierarchyCounts.end());
  for (Count c = 0; c < 43; ++c) {
    const auto r = search_bi(c, m);
    ASSERT_EQ(r.symbol, oracle::symbol_for(h, c)) << c;
    ASSERT_EQ(r.lower, m.cum(r.symbol));
    ASSERT_EQ(r.probes, 5u);
  }
}

// Every strategy against the brute-force interval scan, including static
// models with zero counts.
TEST(SearchAgreement, AllStrategiesAgree) {
  std::mt19937_64 rng(12);
  for (std::size_t K : {1u, 2u, 3u, 4u, 19u, 64u, 257u}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto h = oracle::random_counts(rng, K, trial % 2 ? 0 : 1, 12);
      if (std::accumulate(h.begin(), h.end(), 0u) == 0) h[0] = 1;
      const auto lin = LinearModel::from_counts(h);
      const auto bi = FenwickModel::from_counts(h);
      const auto tree = build_search_tree(lin);
      const auto table = table_create(lin);
      const auto mid = determine_initial_split(lin);
      for (Count c = 0; c < lin.total(); ++c) {
        const auto want = oracle::symbol_for(h, c);
        ASSERT_EQ(search_linear_forward(c, lin).symbol, want);
        ASSERT_EQ(search_linear_backward(c, lin).symbol, want);
        ASSERT_EQ(search_logarithmic(c, lin).symbol, want);
        ASSERT_EQ(search_log2(c, lin, mid).symbol, want);
        ASSERT_EQ(search_log2(c, lin, K / 3).symbol, want);
        ASSERT_EQ(search_exponential(c, lin).symbol, want);
        ASSERT_EQ(search_tree(c, lin, tree).symbol, want);
        ASSERT_EQ(table_lookup(c, table).symbol, want);
        ASSERT_EQ(search_bi(c, bi).symbol, want);
        // the generic scans also run over the hierarchy directly
        ASSERT_EQ(search_logarithmic(c, bi).symbol, want);
      }
    }
  }
}

TEST(Strategy, Names) {
  for (Strategy s : kAllStrategies) EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  EXPECT_THROW(parse_strategy("interp"), Error);
}

}  // namespace
