#pragma once

// Reproducible synthetic sources: flat and truncated geometric symbol
// sequences, plus the raw ISY1 symbol file format.
//
//   "ISY1" | K u32 | N u64 | N x u16 symbols   (little-endian)

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irc/common.hpp"

namespace irc {

/// SplitMix64: Weyl increment 0x9E3779B97F4A7C15 followed by the standard
/// two-multiply finalizer.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

enum class Distribution : std::uint8_t { flat, geometric };

constexpr std::string_view distribution_name(Distribution d) noexcept {
  return d == Distribution::flat ? "flat" : "geom";
}

inline Distribution parse_distribution(std::string_view s) {
  if (s == "flat") return Distribution::flat;
  if (s == "geom" || s == "geometric") return Distribution::geometric;
  throw Error(Errc::incompatible, "unknown distribution '" + std::string(s) + "'");
}

struct GenSpec {
  Distribution distribution = Distribution::flat;
  std::uint32_t alphabet = 2;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

struct GeometricParams {
  unsigned k;
  double p;
};

/// k = max(0, floor(log2 K) - 4), p = 2^(-1 / 2^k).
inline GeometricParams geom_params(std::uint32_t K) {
  if (K == 0) throw Error(Errc::invalid_alphabet, "alphabet size must be at least 1");
  const int lg = std::bit_width(K) - 1;
  const unsigned k = static_cast<unsigned>(std::max(0, lg - 4));
  return {k, std::exp2(-1.0 / std::exp2(static_cast<double>(k)))};
}

/// p(s_i) = (1 - p) p^i / (1 - p^K).
inline std::vector<double> geometric_probabilities(std::uint32_t K) {
  const double p = geom_params(K).p;
  const double norm = (1.0 - p) / (1.0 - std::pow(p, K));
  std::vector<double> out(K);
  for (std::uint32_t i = 0; i < K; ++i) out[i] = norm * std::pow(p, i);
  return out;
}

inline std::vector<Symbol> gen_sequence(const GenSpec& spec) {
  if (spec.alphabet == 0) throw Error(Errc::invalid_alphabet, "alphabet size must be at least 1");
  const std::uint32_t K = spec.alphabet;
  SplitMix64 rng(spec.seed);
  std::vector<Symbol> out(spec.count);
  if (spec.distribution == Distribution::flat) {
    for (auto& s : out) s = std::min(static_cast<Symbol>(rng.uniform() * K), K - 1);
    return out;
  }
  // Inverse CDF: first i with u < F(i), F(i) = (1 - p^(i+1)) / (1 - p^K).
  const double p = geom_params(K).p;
  const double denom = 1.0 - std::pow(p, K);
  std::vector<double> cdf(K);
  for (std::uint32_t i = 0; i < K; ++i) cdf[i] = (1.0 - std::pow(p, i + 1)) / denom;
  cdf.back() = 1.0;
  for (auto& s : out) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    s = static_cast<Symbol>(std::min<std::ptrdiff_t>(it - cdf.begin(), K - 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// ISY1 raw symbol files.

inline constexpr std::array<char, 4> kSymbolMagic{'I', 'S', 'Y', '1'};
inline constexpr std::uint32_t kMaxFileAlphabet = 1U << 16;

struct SymbolFile {
  std::uint32_t alphabet = 0;
  std::vector<Symbol> symbols;
};

inline std::vector<std::uint8_t> serialize_symbols(const SymbolFile& f) {
  if (f.alphabet == 0 || f.alphabet > kMaxFileAlphabet)
    throw Error(Errc::invalid_alphabet, "ISY1 alphabet must be in [1, 65536]");
  std::vector<std::uint8_t> out;
  out.reserve(16 + 2 * f.symbols.size());
  out.insert(out.end(), kSymbolMagic.begin(), kSymbolMagic.end());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(f.alphabet >> (8 * i)));
  const std::uint64_t n = f.symbols.size();
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
  for (Symbol s : f.symbols) {
    if (s >= f.alphabet) throw Error(Errc::invalid_symbol, std::to_string(s) + " >= K");
    out.push_back(static_cast<std::uint8_t>(s));
    out.push_back(static_cast<std::uint8_t>(s >> 8));
  }
  return out;
}

inline SymbolFile parse_symbols(std::span<const std::uint8_t> in) {
  if (in.size() < 4 || !std::equal(kSymbolMagic.begin(), kSymbolMagic.end(), in.begin()))
    throw Error(Errc::bad_magic, "not an ISY1 symbol file");
  if (in.size() < 16) throw Error(Errc::truncated, "ISY1 header");
  SymbolFile f;
  std::uint64_t n = 0;
  for (int i = 0; i < 4; ++i) f.alphabet |= std::uint32_t{in[4 + i]} << (8 * i);
  for (int i = 0; i < 8; ++i) n |= std::uint64_t{in[8 + i]} << (8 * i);
  if (f.alphabet == 0 || f.alphabet > kMaxFileAlphabet)
    throw Error(Errc::bad_header, "ISY1 alphabet must be in [1, 65536]");
  if ((in.size() - 16) / 2 < n) throw Error(Errc::truncated, "ISY1 symbol data");
  f.symbols.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Symbol s = in[16 + 2 * i] | (Symbol{in[17 + 2 * i]} << 8);
    if (s >= f.alphabet) throw Error(Errc::invalid_symbol, std::to_string(s) + " >= K");
    f.symbols[i] = s;
  }
  return f;
}

inline std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot create '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::io, "write failed for '" + path + "'");
}

}  // namespace irc
