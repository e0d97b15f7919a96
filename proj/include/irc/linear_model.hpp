#pragma once

#include <cassert>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "irc/common.hpp"

namespace irc {

/// Order-0 frequency model with the counts and their exclusive prefix sums
/// stored side by side. cum(i) is O(1); update(i) touches K - i boundaries.
template <class Counter = NoAccessCounting>
class BasicLinearModel {
 public:
  BasicLinearModel() = default;

  /// Flat start: every symbol has count one.
  static BasicLinearModel flat(std::size_t K, Count max_total = kMaxTotalCount) {
    if (K == 0) throw Error(Errc::invalid_alphabet, "alphabet size must be at least 1");
    if (K > max_total) throw Error(Errc::overflow, "alphabet larger than the count cap");
    BasicLinearModel m;
    m.max_total_ = max_total;
    m.counts_.assign(K, 1);
    m.cum_.resize(K + 1);
    std::iota(m.cum_.begin(), m.cum_.end(), Count{0});
    return m;
  }

  /// Static histogram. Zero counts are allowed; the sum must not exceed the cap.
  static BasicLinearModel from_counts(std::span<const Count> counts,
                                      Count max_total = kMaxTotalCount) {
    if (counts.empty()) throw Error(Errc::invalid_alphabet, "empty count table");
    BasicLinearModel m;
    m.max_total_ = max_total;
    m.counts_.assign(counts.begin(), counts.end());
    m.cum_.resize(counts.size() + 1);
    std::uint64_t sum = 0;
    m.cum_[0] = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      sum += counts[i];
      if (sum > max_total) throw Error(Errc::overflow, "total count exceeds the cap");
      m.cum_[i + 1] = static_cast<Count>(sum);
    }
    return m;
  }

  std::size_t size() const noexcept { return counts_.size(); }
  Count total() const noexcept { return cum_.empty() ? 0 : cum_.back(); }
  Count max_total() const noexcept { return max_total_; }

  Count cum(std::size_t i) const {
    assert(i < cum_.size());
    counter_.touch();
    return cum_[i];
  }

  Count count(std::size_t sym) const {
    assert(sym < counts_.size());
    counter_.touch();
    return counts_[sym];
  }

  std::span<const Count> counts() const noexcept { return counts_; }
  std::span<const Count> cumulative() const noexcept { return cum_; }

  /// Adaptive increment of one symbol. Halves all counts first when the total
  /// has already reached the cap. Returns true when that rescale happened.
  bool update(std::size_t sym) {
    assert(sym < counts_.size());
    bool rescaled = false;
    if (total() >= max_total_) {
      rescale();
      rescaled = true;
    }
    ++counts_[sym];
    counter_.touch();
    const std::size_t K = counts_.size();
    for (std::size_t i = sym + 1; i <= K; ++i) ++cum_[i];
    counter_.touch(K - sym);
    return rescaled;
  }

  /// Every count becomes h - floor(h/2); a count of one stays one.
  void rescale() {
    const auto before = counter_.accesses();
    Count acc = 0;
    const std::size_t K = counts_.size();
    for (std::size_t i = 0; i < K; ++i) {
      counts_[i] -= counts_[i] >> 1;
      cum_[i] = acc;
      acc += counts_[i];
    }
    cum_[K] = acc;
    counter_.touch(2 * K + 1);
    counter_.add_rescale(counter_.accesses() - before);
  }

  const Counter& counter() const noexcept { return counter_; }
  Counter& counter() noexcept { return counter_; }

 private:
  std::vector<Count> counts_;
  std::vector<Count> cum_;
  Count max_total_ = kMaxTotalCount;
  [[no_unique_address]] mutable Counter counter_{};
};

using LinearModel = BasicLinearModel<>;
using CountedLinearModel = BasicLinearModel<AccessCounter>;

}  // namespace irc
