#pragma once

// Byte-oriented range coder: 32-bit range renormalized to at least 2^24,
// 64-bit low with a cached byte and a run of pending 0xFF bytes to absorb
// carries. The decoder preloads five bytes, the first of which is the
// encoder's initial zero cache byte.

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "irc/common.hpp"

namespace irc {

inline constexpr std::uint32_t kRangeTop = std::uint32_t{1} << 24;
inline constexpr std::size_t kFlushBytes = 5;

class RangeEncoder {
 public:
  RangeEncoder() = default;

  std::uint32_t range() const noexcept { return range_; }
  std::uint64_t low() const noexcept { return low_; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return out_; }

  /// Narrows the interval to [cum_low, cum_low + freq) out of `total`.
  void encode(Count cum_low, Count freq, Count total) {
    if (freq == 0) throw Error(Errc::zero_width_interval, "symbol has zero count");
    assert(total <= kMaxTotalCount && std::uint64_t{cum_low} + freq <= total);
    const std::uint32_t r = range_ / total;
    low_ += std::uint64_t{r} * cum_low;
    range_ = r * freq;
    while (range_ < kRangeTop) {
      range_ <<= 8;
      shift_low();
    }
  }

  /// Emits the final bytes and hands over the payload. The encoder is left
  /// in its initial state.
  std::vector<std::uint8_t> finish() {
    for (std::size_t i = 0; i < kFlushBytes; ++i) shift_low();
    std::vector<std::uint8_t> out = std::move(out_);
    *this = RangeEncoder{};
    return out;
  }

 private:
  void shift_low() {
    if (static_cast<std::uint32_t>(low_) < 0xFF000000U || (low_ >> 32) != 0) {
      const auto carry = static_cast<std::uint8_t>(low_ >> 32);
      std::uint8_t byte = cache_;
      do {
        out_.push_back(static_cast<std::uint8_t>(byte + carry));
        byte = 0xFF;
      } while (--pending_ != 0);
      cache_ = static_cast<std::uint8_t>(low_ >> 24);
    }
    ++pending_;
    low_ = (low_ & 0x00FFFFFFU) << 8;
  }

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFU;
  std::uint8_t cache_ = 0;
  std::uint64_t pending_ = 1;
  std::vector<std::uint8_t> out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const std::uint8_t> payload) : in_(payload) {
    if (payload.size() < kFlushBytes) throw Error(Errc::truncated, "payload shorter than 5 bytes");
    for (std::size_t i = 0; i < kFlushBytes; ++i) code_ = (code_ << 8) | in_[pos_++];
  }

  std::uint32_t range() const noexcept { return range_; }
  std::uint32_t code() const noexcept { return code_; }
  std::size_t consumed() const noexcept { return pos_; }

  /// Code value for the next symbol, always in [0, total).
  Count target(Count total) {
    assert(total >= 1 && total <= kMaxTotalCount);
    step_ = range_ / total;
    const std::uint32_t c = code_ / step_;
    return c < total ? c : total - 1;
  }

  /// Must follow target() with the interval the encoder used.
  void consume(Count cum_low, Count freq) {
    code_ -= step_ * cum_low;
    range_ = step_ * freq;
    while (range_ < kRangeTop) {
      if (pos_ >= in_.size()) throw Error(Errc::truncated, "payload ended mid-stream");
      code_ = (code_ << 8) | in_[pos_++];
      range_ <<= 8;
    }
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint32_t code_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFU;
  std::uint32_t step_ = 1;
};

}  // namespace irc
