#pragma once

// Self-describing compressed streams. Layout (all integers little-endian):
//
//   "IRC1" | version u8 | mode u8 | model u8 | rescale u8 |
//   rescale interval u32 | K u32 | N u64 | [K x u32 counts, static mode only]
//   | range coder payload
//
// The decoder's search strategy is not recorded; it never changes the bits.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irc/common.hpp"
#include "irc/fenwick_model.hpp"
#include "irc/linear_model.hpp"
#include "irc/range_coder.hpp"
#include "irc/search.hpp"

namespace irc {

enum class Mode : std::uint8_t { fixed = 0, adaptive = 1 };
enum class ModelFamily : std::uint8_t { linear = 0, fenwick = 1 };

constexpr std::string_view mode_name(Mode m) noexcept {
  return m == Mode::fixed ? "static" : "adaptive";
}
constexpr std::string_view model_name(ModelFamily m) noexcept {
  return m == ModelFamily::linear ? "linear" : "fenwick";
}
constexpr std::string_view rescale_name(RescaleVariant v) noexcept {
  return v == RescaleVariant::orig ? "orig" : "new";
}

inline Mode parse_mode(std::string_view s) {
  if (s == "static") return Mode::fixed;
  if (s == "adaptive") return Mode::adaptive;
  throw Error(Errc::incompatible, "unknown mode '" + std::string(s) + "'");
}
inline ModelFamily parse_model(std::string_view s) {
  if (s == "linear") return ModelFamily::linear;
  if (s == "fenwick") return ModelFamily::fenwick;
  throw Error(Errc::incompatible, "unknown model '" + std::string(s) + "'");
}
inline RescaleVariant parse_rescale(std::string_view s) {
  if (s == "orig") return RescaleVariant::orig;
  if (s == "new") return RescaleVariant::single_pass;
  throw Error(Errc::incompatible, "unknown rescale variant '" + std::string(s) + "'");
}

struct StreamConfig {
  Mode mode = Mode::adaptive;
  ModelFamily model = ModelFamily::linear;
  RescaleVariant rescale = RescaleVariant::orig;
  std::uint32_t rescale_interval = 0;  // 0: rescale only at the count cap
  std::uint32_t alphabet = 0;
};

inline constexpr std::array<char, 4> kStreamMagic{'I', 'R', 'C', '1'};
inline constexpr std::uint8_t kStreamVersion = 1;
inline constexpr std::size_t kStreamHeaderFixedSize = 24;

struct StreamHeader {
  StreamConfig config;
  std::uint64_t symbols = 0;
  std::vector<Count> counts;  // static mode only

  std::size_t size() const noexcept { return kStreamHeaderFixedSize + 4 * counts.size(); }
};

namespace detail {

inline void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t pos, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{in[pos + i]} << (8 * i);
  return v;
}

}  // namespace detail

/// Rejects configurations no coder can run.
inline void validate_config(const StreamConfig& cfg) {
  if (cfg.alphabet == 0) throw Error(Errc::invalid_alphabet, "alphabet size must be at least 1");
  if (cfg.alphabet > kMaxTotalCount) throw Error(Errc::invalid_alphabet, "alphabet too large");
  if (cfg.mode == Mode::adaptive && cfg.model == ModelFamily::linear &&
      cfg.rescale == RescaleVariant::single_pass) {
    throw Error(Errc::incompatible, "rescale variant 'new' requires the fenwick model");
  }
}

/// Empty optional when the pairing works, otherwise the reason it does not.
inline std::optional<std::string> strategy_conflict(Mode mode, ModelFamily model,
                                                    Strategy strategy) {
  if (strategy == Strategy::bi && model != ModelFamily::fenwick)
    return "bi search requires the fenwick model";
  if (strategy != Strategy::bi && model == ModelFamily::fenwick)
    return "fenwick model supports only bi search";
  if (strategy == Strategy::tree && mode == Mode::adaptive)
    return "tree search is static-only";
  return std::nullopt;
}

inline void write_header(std::vector<std::uint8_t>& out, const StreamHeader& h) {
  out.insert(out.end(), kStreamMagic.begin(), kStreamMagic.end());
  out.push_back(kStreamVersion);
  out.push_back(static_cast<std::uint8_t>(h.config.mode));
  out.push_back(static_cast<std::uint8_t>(h.config.model));
  out.push_back(static_cast<std::uint8_t>(h.config.rescale));
  detail::put_le(out, h.config.rescale_interval, 4);
  detail::put_le(out, h.config.alphabet, 4);
  detail::put_le(out, h.symbols, 8);
  for (Count c : h.counts) detail::put_le(out, c, 4);
}

inline StreamHeader read_header(std::span<const std::uint8_t> in) {
  if (in.size() < 4 || !std::equal(kStreamMagic.begin(), kStreamMagic.end(), in.begin()))
    throw Error(Errc::bad_magic, "not an IRC1 stream");
  if (in.size() < kStreamHeaderFixedSize) throw Error(Errc::truncated, "stream header");
  if (in[4] != kStreamVersion)
    throw Error(Errc::bad_version, "version " + std::to_string(in[4]));
  if (in[5] > 1 || in[6] > 1 || in[7] > 1) throw Error(Errc::bad_header, "unknown enum value");
  StreamHeader h;
  h.config.mode = static_cast<Mode>(in[5]);
  h.config.model = static_cast<ModelFamily>(in[6]);
  h.config.rescale = static_cast<RescaleVariant>(in[7]);
  h.config.rescale_interval = static_cast<std::uint32_t>(detail::get_le(in, 8, 4));
  h.config.alphabet = static_cast<std::uint32_t>(detail::get_le(in, 12, 4));
  h.symbols = detail::get_le(in, 16, 8);
  try {
    validate_config(h.config);
  } catch (const Error& e) {
    throw Error(Errc::bad_header, e.what());
  }
  if (h.config.mode == Mode::fixed) {
    const std::size_t K = h.config.alphabet;
    if (in.size() < kStreamHeaderFixedSize + 4 * K) throw Error(Errc::truncated, "count table");
    h.counts.resize(K);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < K; ++i) {
      h.counts[i] = static_cast<Count>(detail::get_le(in, kStreamHeaderFixedSize + 4 * i, 4));
      sum += h.counts[i];
    }
    if (sum > kMaxTotalCount) throw Error(Errc::bad_header, "count table exceeds the cap");
    if (sum == 0 && h.symbols != 0) throw Error(Errc::bad_header, "empty count table");
  }
  return h;
}

/// Counting pass for static mode.
inline std::vector<std::uint64_t> histogram(std::span<const Symbol> symbols, std::size_t K) {
  std::vector<std::uint64_t> h(K, 0);
  for (Symbol s : symbols) {
    if (s >= K) throw Error(Errc::invalid_symbol, std::to_string(s) + " >= K");
    ++h[s];
  }
  return h;
}

inline constexpr std::uint64_t kStaticTotalTarget = std::uint64_t{1} << 16;

/// Scales a histogram whose total exceeds 2^16 by s = ceil(total / 2^16);
/// nonzero counts become max(1, floor(h / s)).
inline std::vector<Count> normalize_counts(std::span<const std::uint64_t> raw) {
  std::uint64_t total = 0;
  for (auto h : raw) total += h;
  const std::uint64_t s = total > kStaticTotalTarget ? (total + kStaticTotalTarget - 1) / kStaticTotalTarget : 1;
  std::vector<Count> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = raw[i] == 0 ? 0 : static_cast<Count>(std::max<std::uint64_t>(1, raw[i] / s));
  }
  return out;
}

struct EncodeStats {
  std::uint64_t update_accesses = 0;
  std::uint64_t rescale_accesses = 0;
  std::uint64_t rescales = 0;
  std::size_t header_bytes = 0;
  std::size_t payload_bytes = 0;
};

struct DecodeStats {
  std::uint64_t probes = 0;
  std::vector<std::uint64_t> probe_histogram;  // index = probes per symbol
  std::uint64_t update_accesses = 0;
  std::uint64_t rescale_accesses = 0;
  std::uint64_t rescales = 0;
  std::size_t consumed_bytes = 0;
};

namespace detail {

template <class Model>
Model make_model(const StreamHeader& h) {
  const auto K = h.config.alphabet;
  if constexpr (requires { Model::flat(K, h.config.rescale); }) {
    return h.config.mode == Mode::fixed ? Model::from_counts(h.counts, h.config.rescale)
                                        : Model::flat(K, h.config.rescale);
  } else {
    return h.config.mode == Mode::fixed ? Model::from_counts(h.counts) : Model::flat(K);
  }
}

template <class Model>
struct is_fenwick : std::false_type {};
template <class C>
struct is_fenwick<BasicFenwickModel<C>> : std::true_type {};

/// Applies the adaptive update for one symbol plus the periodic rescale and
/// books the array accesses of each. Returns true if any rescale happened.
template <class Model, class Stats>
bool adapt(Model& m, Symbol s, const StreamConfig& cfg, std::uint64_t index, Stats* stats) {
  using Counter = std::decay_t<decltype(m.counter())>;
  std::uint64_t before = 0, rescale_before = 0;
  if constexpr (Counter::enabled) {
    before = m.counter().total;
    rescale_before = m.counter().rescale_total;
  }
  bool rescaled = m.update(s);
  if (cfg.rescale_interval != 0 && (index + 1) % cfg.rescale_interval == 0) {
    m.rescale();
    rescaled = true;
  }
  if constexpr (Counter::enabled) {
    if (stats != nullptr) {
      const auto spent = m.counter().rescale_total - rescale_before;
      stats->update_accesses += m.counter().total - before - spent;
      stats->rescale_accesses += spent;
      stats->rescales = m.counter().rescales;
    }
  }
  return rescaled;
}

template <class Model>
void encode_symbols(std::span<const Symbol> symbols, const StreamHeader& h, RangeEncoder& enc,
                    EncodeStats* stats) {
  Model m = make_model<Model>(h);
  const bool adaptive = h.config.mode == Mode::adaptive;
  for (std::uint64_t n = 0; n < symbols.size(); ++n) {
    const Symbol s = symbols[n];
    enc.encode(m.cum(s), m.count(s), m.total());
    if (adaptive) adapt(m, s, h.config, n, stats);
  }
}

/// Decoder-side search state for one stream.
template <class Model>
class SymbolFinder {
 public:
  struct Found {
    Symbol symbol;
    Count lower;
    Count freq;
    std::uint32_t probes;
  };

  SymbolFinder(Strategy strategy, Mode mode) : strategy_(strategy), mode_(mode) {}

  void prepare(const Model& m) {
    if (mode_ == Mode::fixed) {
      first_probe_ = determine_initial_split(m);
      if (strategy_ == Strategy::tree) tree_ = build_search_tree(m);
      if (strategy_ == Strategy::table) table_ = table_create(m);
    } else {
      first_probe_ = m.size() / 2;
      if (strategy_ == Strategy::table) table_ = table_create(m, std::size_t{m.max_total()} + 1);
    }
  }

  Found find(Count c, const Model& m) const {
    if constexpr (is_fenwick<Model>::value) {
      const IndexedHit hit = search_bi(c, m);
      return {hit.symbol, hit.lower, m.count(hit.symbol), hit.probes};
    } else {
      SearchHit hit;
      switch (strategy_) {
        case Strategy::lin_fwd: hit = search_linear_forward(c, m); break;
        case Strategy::lin_bwd: hit = search_linear_backward(c, m); break;
        case Strategy::log: hit = search_logarithmic(c, m); break;
        case Strategy::log2: hit = search_log2(c, m, first_probe_); break;
        case Strategy::exp: hit = search_exponential(c, m); break;
        case Strategy::tree: hit = search_tree(c, m, tree_); break;
        case Strategy::table: hit = table_lookup(c, table_); break;
        case Strategy::bi: throw Error(Errc::incompatible, "bi search requires the fenwick model");
      }
      return {hit.symbol, m.cum(hit.symbol), m.count(hit.symbol), hit.probes};
    }
  }

  void after_update(const Model& m, Symbol s, bool rescaled) {
    if (strategy_ == Strategy::log2) first_probe_ = adapt_initial_split(m.size(), first_probe_, s);
    if constexpr (!is_fenwick<Model>::value) {
      if (strategy_ == Strategy::table) {
        if (rescaled) {
          table_ = table_create(m, std::size_t{m.max_total()} + 1);
        } else {
          table_update(table_, m, s);
        }
      }
    }
  }

 private:
  Strategy strategy_;
  Mode mode_;
  std::size_t first_probe_ = 0;
  SearchTree tree_;
  LookupTable table_;
};

template <class Model>
std::vector<Symbol> decode_symbols(std::span<const std::uint8_t> payload, const StreamHeader& h,
                                   Strategy strategy, DecodeStats* stats) {
  RangeDecoder dec(payload);
  Model m = make_model<Model>(h);
  SymbolFinder<Model> finder(strategy, h.config.mode);
  std::vector<Symbol> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(h.symbols, 1U << 24)));
  if (h.symbols != 0) finder.prepare(m);
  const bool adaptive = h.config.mode == Mode::adaptive;
  for (std::uint64_t n = 0; n < h.symbols; ++n) {
    const Count c = dec.target(m.total());
    const auto found = finder.find(c, m);
    dec.consume(found.lower, found.freq);
    out.push_back(found.symbol);
    if (stats != nullptr) {
      stats->probes += found.probes;
      if (stats->probe_histogram.size() <= found.probes) stats->probe_histogram.resize(found.probes + 1);
      ++stats->probe_histogram[found.probes];
    }
    if (adaptive) {
      const bool rescaled = adapt(m, found.symbol, h.config, n, stats);
      finder.after_update(m, found.symbol, rescaled);
    }
  }
  if (stats != nullptr) stats->consumed_bytes = dec.consumed();
  return out;
}

}  // namespace detail

/// Builds the header for `symbols`, running the counting pass in static mode.
inline StreamHeader make_header(std::span<const Symbol> symbols, const StreamConfig& cfg) {
  validate_config(cfg);
  StreamHeader h;
  h.config = cfg;
  h.symbols = symbols.size();
  if (cfg.mode == Mode::fixed) {
    h.config.rescale = RescaleVariant::orig;
    h.config.rescale_interval = 0;
    h.counts = normalize_counts(histogram(symbols, cfg.alphabet));
  } else {
    for (Symbol s : symbols) {
      if (s >= cfg.alphabet) throw Error(Errc::invalid_symbol, std::to_string(s) + " >= K");
    }
  }
  return h;
}

namespace detail {

template <bool Counted>
std::vector<std::uint8_t> encode_impl(std::span<const Symbol> symbols, const StreamConfig& cfg,
                                      EncodeStats* stats) {
  const StreamHeader h = make_header(symbols, cfg);
  std::vector<std::uint8_t> out;
  write_header(out, h);
  RangeEncoder enc;
  using Linear = std::conditional_t<Counted, CountedLinearModel, LinearModel>;
  using Fenwick = std::conditional_t<Counted, CountedFenwickModel, FenwickModel>;
  if (h.config.model == ModelFamily::linear) {
    encode_symbols<Linear>(symbols, h, enc, stats);
  } else {
    encode_symbols<Fenwick>(symbols, h, enc, stats);
  }
  const auto payload = enc.finish();
  if (stats != nullptr) {
    stats->header_bytes = out.size();
    stats->payload_bytes = payload.size();
  }
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

template <bool Counted>
std::vector<Symbol> decode_impl(std::span<const std::uint8_t> bytes, Strategy strategy,
                                DecodeStats* stats) {
  const StreamHeader h = read_header(bytes);
  if (auto why = strategy_conflict(h.config.mode, h.config.model, strategy))
    throw Error(Errc::incompatible, *why);
  const auto payload = bytes.subspan(h.size());
  using Linear = std::conditional_t<Counted, CountedLinearModel, LinearModel>;
  using Fenwick = std::conditional_t<Counted, CountedFenwickModel, FenwickModel>;
  if (h.config.model == ModelFamily::linear) return decode_symbols<Linear>(payload, h, strategy, stats);
  return decode_symbols<Fenwick>(payload, h, strategy, stats);
}

}  // namespace detail

inline std::vector<std::uint8_t> encode_stream(std::span<const Symbol> symbols,
                                               const StreamConfig& cfg) {
  return detail::encode_impl<false>(symbols, cfg, nullptr);
}

/// Instrumented variant: same bytes, plus model access counters.
inline std::vector<std::uint8_t> encode_stream(std::span<const Symbol> symbols,
                                               const StreamConfig& cfg, EncodeStats& stats) {
  stats = {};
  return detail::encode_impl<true>(symbols, cfg, &stats);
}

inline std::vector<Symbol> decode_stream(std::span<const std::uint8_t> bytes, Strategy strategy) {
  return detail::decode_impl<false>(bytes, strategy, nullptr);
}

inline std::vector<Symbol> decode_stream(std::span<const std::uint8_t> bytes, Strategy strategy,
                                         DecodeStats& stats) {
  stats = {};
  return detail::decode_impl<true>(bytes, strategy, &stats);
}

/// The range coder bytes that follow the header.
inline std::span<const std::uint8_t> stream_payload(std::span<const std::uint8_t> bytes) {
  return bytes.subspan(read_header(bytes).size());
}

}  // namespace irc
