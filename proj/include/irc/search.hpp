#pragma once

// Decoder-side symbol identification. Every strategy answers the same
// question: given a code value c in [0, total), find the symbol i with
// cum(i) <= c < cum(i + 1). Each call also reports how many probes
// (loop iterations) it needed, the portable stand-in for timing.

#include <cassert>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "irc/common.hpp"
#include "irc/fenwick_model.hpp"

namespace irc {

template <class M>
concept CumulativeSource = requires(const M& m, std::size_t i) {
  { m.size() } -> std::convertible_to<std::size_t>;
  { m.total() } -> std::convertible_to<Count>;
  { m.cum(i) } -> std::convertible_to<Count>;
};

struct SearchHit {
  Symbol symbol = 0;
  std::uint32_t probes = 0;
};

struct IndexedHit {
  Symbol symbol = 0;
  Count lower = 0;  // cum(symbol), accumulated during the descent
  std::uint32_t probes = 0;
};

enum class Strategy : std::uint8_t { lin_fwd, lin_bwd, log, log2, exp, tree, table, bi };

inline constexpr Strategy kAllStrategies[] = {Strategy::lin_fwd, Strategy::lin_bwd,
                                              Strategy::log,     Strategy::log2,
                                              Strategy::exp,     Strategy::tree,
                                              Strategy::table,   Strategy::bi};

constexpr std::string_view strategy_name(Strategy s) noexcept {
  switch (s) {
    case Strategy::lin_fwd: return "lin-fwd";
    case Strategy::lin_bwd: return "lin-bwd";
    case Strategy::log: return "log";
    case Strategy::log2: return "log2";
    case Strategy::exp: return "exp";
    case Strategy::tree: return "tree";
    case Strategy::table: return "table";
    case Strategy::bi: return "bi";
  }
  return "?";
}

inline Strategy parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (strategy_name(s) == name) return s;
  }
  throw Error(Errc::unknown_strategy, std::string(name));
}

// ---------------------------------------------------------------------------
// Linear and logarithmic scans over the boundary array.

template <CumulativeSource M>
SearchHit search_linear_backward(Count c, const M& m) {
  assert(c < m.total());
  std::size_t i = m.size() - 1;
  std::uint32_t probes = 1;
  while (c < m.cum(i)) {
    --i;
    ++probes;
  }
  return {static_cast<Symbol>(i), probes};
}

template <CumulativeSource M>
SearchHit search_linear_forward(Count c, const M& m) {
  assert(c < m.total());
  std::size_t i = 1;
  std::uint32_t probes = 1;
  while (c >= m.cum(i)) {
    ++i;
    ++probes;
  }
  return {static_cast<Symbol>(i - 1), probes};
}

template <CumulativeSource M>
SearchHit search_logarithmic(Count c, const M& m) {
  assert(c < m.total());
  std::size_t bottom = 0;
  std::size_t top = m.size();
  std::uint32_t probes = 0;
  do {
    const std::size_t i = (top + bottom) >> 1;
    ++probes;
    if (c < m.cum(i)) {
      top = i;
    } else {
      bottom = i + 1;
    }
  } while (top != bottom);
  return {static_cast<Symbol>(bottom - 1), probes};
}

/// Doubles an upper index until it passes c, then bisects between the last
/// two candidates. The upper index is clamped to K so alphabets that are not
/// powers of two never read past the boundary array.
template <CumulativeSource M>
SearchHit search_exponential(Count c, const M& m) {
  assert(c < m.total());
  const std::size_t K = m.size();
  std::size_t bottom = 0;
  std::size_t top = 1;
  std::uint32_t probes = 0;
  for (;;) {
    if (top >= K) {
      top = K;
      break;
    }
    ++probes;
    if (m.cum(top) > c) break;
    bottom = top;
    top <<= 1;
  }
  do {
    const std::size_t i = (top + bottom) >> 1;
    ++probes;
    if (c < m.cum(i)) {
      top = i;
    } else {
      bottom = i + 1;
    }
  } while (top != bottom);
  return {static_cast<Symbol>(bottom - 1), probes};
}

// ---------------------------------------------------------------------------
// Probability-balanced splits.

/// Interior boundary j in (bottom, top) minimizing |2 cum(j) - cum(top) - cum(bottom)|,
/// smallest j on ties. 2 cum(j) is non-decreasing in j, so the minimum sits at
/// the first j where the difference turns non-negative or just before it.
template <CumulativeSource M>
std::size_t best_split(const M& m, std::size_t bottom, std::size_t top) {
  assert(bottom + 2 <= top && top <= m.size());
  const std::int64_t target = std::int64_t{m.cum(top)} + m.cum(bottom);
  auto diff = [&](std::size_t j) { return 2 * std::int64_t{m.cum(j)} - target; };
  // first j in [lo, hi) with diff(j) >= bound, or hi
  auto first_at_least = [&](std::size_t lo, std::size_t hi, std::int64_t bound) {
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (diff(mid) >= bound) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  };
  const std::size_t above = first_at_least(bottom + 1, top, 0);
  if (above == bottom + 1) return above;
  const std::int64_t below_diff = diff(above - 1);
  const std::size_t below = first_at_least(bottom + 1, above - 1, below_diff);
  if (above == top) return below;
  return -below_diff <= diff(above) ? below : above;
}

inline constexpr std::int32_t kNoChild = -1;

/// Binary search tree over symbol indices; node i tests the interval of symbol i.
struct SearchTree {
  std::vector<std::int32_t> left;
  std::vector<std::int32_t> right;
  std::int32_t root = kNoChild;
};

/// Builds the tree top-down: the root of the range [bottom, top) is
/// best_split(bottom, top); single-symbol ranges become leaves.
template <CumulativeSource M>
SearchTree build_search_tree(const M& m) {
  const std::size_t K = m.size();
  if (K == 0) throw Error(Errc::invalid_alphabet, "empty model");
  SearchTree tree;
  tree.left.assign(K, kNoChild);
  tree.right.assign(K, kNoChild);
  struct Task {
    std::size_t bottom, top;
    std::int32_t* slot;
  };
  std::vector<Task> pending{{0, K, &tree.root}};
  while (!pending.empty()) {
    const Task task = pending.back();
    pending.pop_back();
    if (task.bottom >= task.top) continue;
    if (task.top - task.bottom == 1) {
      *task.slot = static_cast<std::int32_t>(task.bottom);
      continue;
    }
    const std::size_t j = best_split(m, task.bottom, task.top);
    *task.slot = static_cast<std::int32_t>(j);
    pending.push_back({task.bottom, j, &tree.left[j]});
    pending.push_back({j + 1, task.top, &tree.right[j]});
  }
  return tree;
}

/// Only valid while the model still has the boundaries the tree was built from.
template <CumulativeSource M>
SearchHit search_tree(Count c, const M& m, const SearchTree& tree) {
  assert(c < m.total());
  std::int32_t i = tree.root;
  std::uint32_t probes = 0;
  for (;;) {
    assert(i != kNoChild);
    ++probes;
    const auto node = static_cast<std::size_t>(i);
    if (c < m.cum(node)) {
      i = tree.left[node];
    } else if (c < m.cum(node + 1)) {
      break;
    } else {
      i = tree.right[node];
    }
  }
  return {static_cast<Symbol>(i), probes};
}

// ---------------------------------------------------------------------------
// Bisection with a distribution-aware first probe.

/// Smallest index whose boundary reaches half the total, stepped back by one
/// when the lower neighbour splits the mass more evenly.
template <CumulativeSource M>
std::size_t determine_initial_split(const M& m) {
  const std::uint64_t total = m.total();
  std::size_t mid = 0;
  while (2 * std::uint64_t{m.cum(mid)} < total) ++mid;
  if (mid > 0 && m.cum(mid) > total - m.cum(mid - 1)) --mid;
  return mid;
}

/// One-step adaptation of the first probe after decoding symbol `decoded`.
/// Mirrors the reference procedure literally, including its direction.
constexpr std::size_t adapt_initial_split(std::size_t K, std::size_t mid,
                                          std::size_t decoded) noexcept {
  if (mid < decoded) {
    if (mid > 0) --mid;
  } else if (mid < K) {
    ++mid;
  }
  return mid;
}

template <CumulativeSource M>
SearchHit search_log2(Count c, const M& m, std::size_t first_probe) {
  assert(c < m.total());
  assert(first_probe <= m.size());
  std::size_t bottom = 0;
  std::size_t top = m.size();
  std::size_t i = first_probe;
  std::uint32_t probes = 0;
  do {
    ++probes;
    if (c < m.cum(i)) {
      top = i;
    } else {
      bottom = i + 1;
    }
    i = (top + bottom) >> 1;
  } while (top != bottom);
  return {static_cast<Symbol>(bottom - 1), probes};
}

// ---------------------------------------------------------------------------
// Direct mapping from code value to symbol.

struct LookupTable {
  std::vector<Symbol> t;  // t[c] for c < total; extra slots are growth room
  Count total = 0;
};

/// `capacity` reserves room for adaptive growth; the table never shrinks
/// below the model's current total. Zero-count symbols get no entries.
template <CumulativeSource M>
LookupTable table_create(const M& m, std::size_t capacity = 0) {
  const Count total = m.total();
  if (total == 0) throw Error(Errc::invalid_alphabet, "lookup table needs a positive total");
  LookupTable table;
  table.t.resize(std::max<std::size_t>(capacity, total));
  table.total = total;
  std::size_t idx = 0;
  Count prev = m.cum(0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Count next = m.cum(i + 1);
    for (Count n = prev; n < next; ++n) table.t[idx++] = static_cast<Symbol>(i);
    prev = next;
  }
  return table;
}

inline SearchHit table_lookup(Count c, const LookupTable& table) {
  assert(c < table.total);
  return {table.t[c], 1};
}

/// Refreshes the table after the count of symbol `sym` was incremented by
/// one (all counts >= 1). Every symbol from `sym` on gains its last slot.
/// Returns the number of entries written.
template <CumulativeSource M>
std::size_t table_update(LookupTable& table, const M& m, std::size_t sym) {
  const std::size_t K = m.size();
  const Count total = m.total();
  if (total > table.t.size()) throw Error(Errc::capacity_exhausted, "lookup table is full");
  for (std::size_t j = sym; j < K; ++j) table.t[m.cum(j + 1) - 1] = static_cast<Symbol>(j);
  table.total = total;
  return K - sym;
}

// ---------------------------------------------------------------------------
// Binary-indexed descent.

/// Walks the hierarchy from the top-level index downwards, subtracting every
/// entry that c passes. The subtracted total is the symbol's lower boundary.
template <class Counter>
IndexedHit search_bi(Count c, const BasicFenwickModel<Counter>& m) {
  assert(c < m.total());
  const std::size_t K = m.size();
  std::size_t bottom = 0;
  std::size_t step = m.top_level();
  Count rest = c;
  std::uint32_t probes = 0;
  do {
    ++probes;
    const std::size_t probe = bottom + step;
    if (probe <= K) {
      const Count v = m.at(probe);
      if (rest >= v) {
        bottom = probe;
        rest -= v;
      }
    }
    step >>= 1;
  } while (step != 0);
  return {static_cast<Symbol>(bottom), c - rest, probes};
}

}  // namespace irc
