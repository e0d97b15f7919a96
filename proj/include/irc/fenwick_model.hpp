#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

#include "irc/common.hpp"

namespace irc {

enum class RescaleVariant : std::uint8_t {
  orig = 0,         // per-symbol halving along the forward chain
  single_pass = 1,  // halves the hierarchy entries directly in one pass
};

/// Binary-indexed cumulative counts. v[0] is always zero; v[i] for i >= 1 holds
/// the sum of the counts of symbols parent_index(i) .. i-1, so a cumulative
/// count is the sum of v over the parent chain and an increment walks the
/// forward chain. Both take at most floor(log2 K) + 1 steps.
///
/// The two rescale procedures quantize differently and therefore produce
/// different models from the same state; encoder and decoder must agree on
/// the variant.
template <class Counter = NoAccessCounting>
class BasicFenwickModel {
 public:
  BasicFenwickModel() = default;

  static BasicFenwickModel flat(std::size_t K, RescaleVariant variant = RescaleVariant::orig,
                                Count max_total = kMaxTotalCount) {
    if (K == 0) throw Error(Errc::invalid_alphabet, "alphabet size must be at least 1");
    if (K > max_total) throw Error(Errc::overflow, "alphabet larger than the count cap");
    BasicFenwickModel m(K, variant, max_total);
    for (std::size_t sym = 0; sym < K; ++sym) {
      for (std::size_t i = sym + 1; i <= K; i += forward_step(i)) ++m.v_[i];
    }
    m.total_ = static_cast<Count>(K);
    return m;
  }

  static BasicFenwickModel from_counts(std::span<const Count> counts,
                                       RescaleVariant variant = RescaleVariant::orig,
                                       Count max_total = kMaxTotalCount) {
    if (counts.empty()) throw Error(Errc::invalid_alphabet, "empty count table");
    std::uint64_t sum = 0;
    for (Count c : counts) sum += c;
    if (sum > max_total) throw Error(Errc::overflow, "total count exceeds the cap");
    BasicFenwickModel m(counts.size(), variant, max_total);
    for (std::size_t sym = 0; sym < counts.size(); ++sym) m.add(sym, counts[sym]);
    m.total_ = static_cast<Count>(sum);
    m.counter_ = Counter{};
    return m;
  }

  std::size_t size() const noexcept { return v_.empty() ? 0 : v_.size() - 1; }
  Count total() const noexcept { return total_; }
  Count max_total() const noexcept { return max_total_; }
  RescaleVariant variant() const noexcept { return variant_; }
  std::size_t top_level() const noexcept { return top_level_; }
  std::span<const Count> tree() const noexcept { return v_; }

  Count at(std::size_t i) const {
    assert(i < v_.size());
    counter_.touch();
    return v_[i];
  }

  /// Lower boundary of symbol i (0 <= i <= K).
  Count cum(std::size_t i) const {
    assert(i < v_.size());
    Count sum = 0;
    for (; i > 0; i = parent_index(i)) {
      sum += v_[i];
      counter_.touch();
    }
    return sum;
  }

  /// Count of one symbol, by subtracting the predecessor's chain from v[sym+1]
  /// until it meets sym+1's own parent.
  Count count(std::size_t sym) const {
    assert(sym + 1 < v_.size());
    std::size_t i = sym + 1;
    Count h = v_[i];
    counter_.touch();
    const std::size_t parent = parent_index(i);
    for (i = i - 1; i != parent; i = parent_index(i)) {
      h -= v_[i];
      counter_.touch();
    }
    return h;
  }

  /// Adaptive increment. Returns true when the cap forced a rescale first.
  bool update(std::size_t sym) {
    assert(sym < size());
    bool rescaled = false;
    if (total_ >= max_total_) {
      rescale();
      rescaled = true;
    }
    add(sym, 1);
    ++total_;
    return rescaled;
  }

  void rescale() {
    if (variant_ == RescaleVariant::orig) {
      rescale_orig();
    } else {
      rescale_single_pass();
    }
  }

  /// Each count h becomes h - floor(h/2), applied symbol by symbol.
  void rescale_orig() {
    const auto before = counter_.accesses();
    const std::size_t K = size();
    for (std::size_t sym = 0; sym < K; ++sym) {
      const Count half = count(sym) >> 1;
      for (std::size_t i = sym + 1; i <= K; i += forward_step(i)) {
        v_[i] -= half;
        counter_.touch();
      }
    }
    total_ = cum(K);
    counter_.add_rescale(counter_.accesses() - before);
  }

  /// Halves the hierarchy entries in one ascending pass. Odd positions hold a
  /// single count and are halved in place; an even position must stay at least
  /// one above the (already rescaled) sum of its left siblings so the count of
  /// symbol i-1 remains positive.
  void rescale_single_pass() {
    const auto before = counter_.accesses();
    const std::size_t K = size();
    for (std::size_t i = 1; i <= K; ++i) {
      if (i & 1U) {
        v_[i] -= v_[i] >> 1;
        counter_.touch();
        continue;
      }
      const Count halved = v_[i] - (v_[i] >> 1);
      counter_.touch();
      Count siblings = 0;
      std::size_t j = i - 1;
      std::size_t k = i;
      do {
        siblings += v_[j];
        counter_.touch();
        j = parent_index(j);
        k >>= 1;
      } while ((k & 1U) == 0);
      v_[i] = std::max(siblings + 1, halved);
      counter_.touch();
    }
    total_ = cum(K);
    counter_.add_rescale(counter_.accesses() - before);
  }

  const Counter& counter() const noexcept { return counter_; }
  Counter& counter() noexcept { return counter_; }

 private:
  BasicFenwickModel(std::size_t K, RescaleVariant variant, Count max_total)
      : v_(K + 1, 0), max_total_(max_total), top_level_(top_level_index(K)), variant_(variant) {}

  void add(std::size_t sym, Count delta) {
    for (std::size_t i = sym + 1; i < v_.size(); i += forward_step(i)) {
      v_[i] += delta;
      counter_.touch();
    }
  }

  std::vector<Count> v_;
  Count total_ = 0;
  Count max_total_ = kMaxTotalCount;
  std::size_t top_level_ = 0;
  RescaleVariant variant_ = RescaleVariant::orig;
  [[no_unique_address]] mutable Counter counter_{};
};

using FenwickModel = BasicFenwickModel<>;
using CountedFenwickModel = BasicFenwickModel<AccessCounter>;

}  // namespace irc
