#pragma once

// Shared vocabulary for the interval range coding toolkit: count types,
// limits, errors, index arithmetic and the access-counting policies used by
// the models.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace irc {

using Count = std::uint32_t;
using Symbol = std::uint32_t;

// Upper bound for totalCount. Keeps range/total >= 1 for a 32-bit range
// register renormalized to at least 2^24.
inline constexpr Count kMaxTotalCount = Count{1} << 20;

enum class Errc {
  invalid_alphabet,
  overflow,
  zero_width_interval,
  invalid_symbol,
  capacity_exhausted,
  bad_magic,
  bad_version,
  bad_header,
  truncated,
  unknown_strategy,
  incompatible,
  io,
};

inline const char* errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::invalid_alphabet: return "invalid alphabet";
    case Errc::overflow: return "count overflow";
    case Errc::zero_width_interval: return "zero-width interval";
    case Errc::invalid_symbol: return "invalid symbol";
    case Errc::capacity_exhausted: return "capacity exhausted";
    case Errc::bad_magic: return "bad magic";
    case Errc::bad_version: return "bad version";
    case Errc::bad_header: return "bad header";
    case Errc::truncated: return "truncated payload";
    case Errc::unknown_strategy: return "unknown strategy";
    case Errc::incompatible: return "incompatible configuration";
    case Errc::io: return "i/o error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(detail.empty() ? std::string(errc_name(code))
                                          : std::string(errc_name(code)) + ": " + detail),
        code_(code) {}
  explicit Error(Errc code) : Error(code, {}) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Lowest set bit of i, i.e. the distance to the next position on the
// forward chain. i & -i in two's complement.
constexpr std::size_t forward_step(std::size_t i) noexcept { return i & (~i + 1); }

// i with its lowest set bit cleared: the next position on the parent chain.
constexpr std::size_t parent_index(std::size_t i) noexcept { return i & (i - 1); }

// Half of the smallest power of two strictly greater than K.
constexpr std::size_t top_level_index(std::size_t K) noexcept { return std::bit_floor(K); }

// Access accounting. A statement-level touch of one array element counts
// once: an in-place `a[i] += d` is one access, a read followed later by a
// separate write is two.
struct NoAccessCounting {
  static constexpr bool enabled = false;
  constexpr void touch(std::uint64_t = 1) const noexcept {}
  constexpr std::uint64_t accesses() const noexcept { return 0; }
  constexpr void add_rescale(std::uint64_t) const noexcept {}
};

struct AccessCounter {
  static constexpr bool enabled = true;
  std::uint64_t total = 0;
  std::uint64_t rescale_total = 0;
  std::uint64_t rescales = 0;

  void touch(std::uint64_t n = 1) noexcept { total += n; }
  std::uint64_t accesses() const noexcept { return total; }
  void add_rescale(std::uint64_t n) noexcept {
    rescale_total += n;
    ++rescales;
  }
};

}  // namespace irc
