#pragma once

// Published reference fixtures: the K=19 hierarchy example, the BitAND
// table and the four-symbol lookup table example.

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "irc/fenwick_model.hpp"
#include "irc/linear_model.hpp"
#include "irc/search.hpp"

namespace irc::fixtures {

inline constexpr std::array<Count, 19> kHierarchyCounts{3, 2, 2, 1, 4, 1, 5, 2, 3, 1,
                                                         2, 3, 1, 4, 2, 1, 1, 3, 2};
inline constexpr std::array<Count, 20> kHierarchyCumulative{0,  3,  5,  7,  8,  12, 13,
                                                             18, 20, 23, 24, 26, 29, 30,
                                                             34, 36, 37, 38, 41, 43};
inline constexpr std::array<Count, 20> kHierarchyTree{0, 3, 5, 2, 8, 4, 5, 5, 20, 3,
                                                       4, 2, 9, 1, 5, 2, 37, 1, 4, 2};

struct BitAndRow {
  std::size_t i, step, parent;
};
inline constexpr std::array<BitAndRow, 11> kBitAndRows{{{1, 1, 0},
                                                        {2, 2, 0},
                                                        {3, 1, 2},
                                                        {4, 4, 0},
                                                        {5, 1, 4},
                                                        {6, 2, 4},
                                                        {7, 1, 6},
                                                        {8, 8, 0},
                                                        {9, 1, 8},
                                                        {10, 2, 8},
                                                        {11, 1, 10}}};

inline constexpr std::array<Count, 4> kToyCounts{3, 2, 1, 4};
inline constexpr std::array<Symbol, 10> kToyTable{0, 0, 0, 1, 1, 2, 3, 3, 3, 3};
inline constexpr std::array<Symbol, 11> kToyTableAfter{0, 0, 0, 1, 1, 1, 2, 3, 3, 3, 3};

struct Check {
  std::string name;
  bool passed;
};

inline bool hierarchy_fixture() {
  const auto m = FenwickModel::from_counts(kHierarchyCounts);
  const auto v = m.tree();
  if (!std::equal(v.begin(), v.end(), kHierarchyTree.begin(), kHierarchyTree.end())) return false;
  for (std::size_t i = 0; i < kHierarchyCumulative.size(); ++i) {
    if (m.cum(i) != kHierarchyCumulative[i]) return false;
  }
  return m.total() == 43 && m.top_level() == 16;
}

inline bool bitand_fixture() {
  for (const auto& row : kBitAndRows) {
    if (forward_step(row.i) != row.step || parent_index(row.i) != row.parent) return false;
  }
  return true;
}

/// Builds the toy table, bumps symbol 1 and checks that exactly slots 5, 6 and
/// 10 changed.
inline bool toy_table_fixture() {
  auto m = LinearModel::from_counts(kToyCounts);
  auto table = table_create(m, 11);
  if (!std::equal(kToyTable.begin(), kToyTable.end(), table.t.begin())) return false;
  const auto before = table.t;
  m.update(1);
  if (table_update(table, m, 1) != 3) return false;
  if (!std::equal(kToyTableAfter.begin(), kToyTableAfter.end(), table.t.begin())) return false;
  std::vector<std::size_t> changed;
  for (std::size_t c = 0; c < kToyTableAfter.size(); ++c) {
    if (before[c] != table.t[c]) changed.push_back(c);
  }
  return changed == std::vector<std::size_t>{5, 6, 10};
}

inline std::vector<Check> run_all() {
  return {{"hierarchy (K=19) tree and cumulative counts", hierarchy_fixture()},
          {"BitAND forward/parent steps, i = 1..11", bitand_fixture()},
          {"toy lookup table create and update", toy_table_fixture()}};
}

}  // namespace irc::fixtures
