#pragma once

// Benchmark grid over alphabet size, source distribution, coding mode, model,
// search strategy and rescale variant. Work counters come from one
// instrumented encode/decode pass and are exact; wall-clock columns are the
// minimum over repeated uninstrumented passes and are informative only.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "irc/datagen.hpp"
#include "irc/stream.hpp"

namespace irc {

struct BenchRecord {
  Mode mode = Mode::fixed;
  Distribution distribution = Distribution::flat;
  std::uint32_t alphabet = 0;
  std::uint64_t count = 0;
  ModelFamily model = ModelFamily::linear;
  Strategy search = Strategy::log;
  std::string rescale = "none";
  std::uint32_t rescale_interval = 0;
  std::uint64_t seed = 0;
  double encode_ns_per_symbol = 0;
  double decode_ns_per_symbol = 0;
  double avg_search_iterations = 0;
  double avg_model_accesses = 0;  // adaptive update accesses per symbol
  std::uint64_t rescale_accesses = 0;
  std::uint64_t output_bytes = 0;
  double entropy_bits = 0;
  std::string skip_reason;  // non-empty: the cell was not run

  bool skipped() const noexcept { return !skip_reason.empty(); }
};

struct GridSpec {
  std::vector<std::uint32_t> alphabets;
  std::vector<Distribution> distributions{Distribution::flat, Distribution::geometric};
  std::vector<Mode> modes{Mode::fixed};
  std::vector<ModelFamily> models{ModelFamily::linear, ModelFamily::fenwick};
  std::vector<Strategy> strategies{std::begin(kAllStrategies), std::end(kAllStrategies)};
  std::vector<RescaleVariant> rescales{RescaleVariant::orig, RescaleVariant::single_pass};
  std::uint32_t rescale_interval = 1024;
  std::uint64_t count = 1'000'000;
  std::uint64_t seed = 1;
  int timing_reps = 5;
};

/// K = 2, 4, ..., 2^max_log2.
inline std::vector<std::uint32_t> power_of_two_alphabets(unsigned max_log2 = 10) {
  std::vector<std::uint32_t> ks;
  for (unsigned n = 1; n <= max_log2; ++n) ks.push_back(1U << n);
  return ks;
}

inline GridSpec static_suite(std::uint64_t n = 1'000'000) {
  GridSpec g;
  g.alphabets = power_of_two_alphabets();
  g.modes = {Mode::fixed};
  g.count = n;
  return g;
}

inline GridSpec adaptive_suite(std::uint64_t n = 1'000'000) {
  GridSpec g;
  g.alphabets = power_of_two_alphabets();
  g.modes = {Mode::adaptive};
  g.count = n;
  return g;
}

/// Order-0 empirical entropy in bits per symbol.
inline double empirical_entropy(std::span<const Symbol> symbols, std::size_t K) {
  if (symbols.empty()) return 0;
  const auto h = histogram(symbols, K);
  const double n = static_cast<double>(symbols.size());
  double bits = 0;
  for (auto c : h) {
    if (c != 0) bits -= static_cast<double>(c) / n * std::log2(static_cast<double>(c) / n);
  }
  return bits;
}

namespace detail {

template <class F>
double min_ns(int reps, F&& run) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    run();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::nano>(t1 - t0).count());
  }
  return reps > 0 ? best : 0.0;
}

}  // namespace detail

/// Runs one cell on a prepared sequence. Throws if the round trip fails.
inline BenchRecord run_cell(std::span<const Symbol> symbols, const StreamConfig& cfg,
                            Strategy strategy, int timing_reps) {
  BenchRecord rec;
  rec.mode = cfg.mode;
  rec.alphabet = cfg.alphabet;
  rec.count = symbols.size();
  rec.model = cfg.model;
  rec.search = strategy;
  if (cfg.mode == Mode::adaptive) {
    rec.rescale = std::string(rescale_name(cfg.rescale));
    rec.rescale_interval = cfg.rescale_interval;
  }
  if (auto why = strategy_conflict(cfg.mode, cfg.model, strategy)) {
    rec.skip_reason = *why;
    return rec;
  }
  try {
    validate_config(cfg);
  } catch (const Error& e) {
    rec.skip_reason = e.what();
    return rec;
  }

  EncodeStats es;
  const auto bytes = encode_stream(symbols, cfg, es);
  DecodeStats ds;
  const auto decoded = decode_stream(bytes, strategy, ds);
  if (!std::equal(decoded.begin(), decoded.end(), symbols.begin(), symbols.end()))
    throw Error(Errc::incompatible, "round trip mismatch in benchmark cell");

  const double n = symbols.empty() ? 1.0 : static_cast<double>(symbols.size());
  rec.output_bytes = bytes.size();
  rec.avg_search_iterations = static_cast<double>(ds.probes) / n;
  rec.avg_model_accesses = static_cast<double>(es.update_accesses) / n;
  rec.rescale_accesses = es.rescale_accesses;
  rec.encode_ns_per_symbol = detail::min_ns(timing_reps, [&] { (void)encode_stream(symbols, cfg); }) / n;
  rec.decode_ns_per_symbol = detail::min_ns(timing_reps, [&] { (void)decode_stream(bytes, strategy); }) / n;
  return rec;
}

/// One record per grid cell, skipped cells included. `progress` is called
/// after each cell.
inline std::vector<BenchRecord> run_suite(
    const GridSpec& grid, const std::function<void(const BenchRecord&)>& progress = {}) {
  std::vector<BenchRecord> out;
  for (Distribution dist : grid.distributions) {
    for (std::uint32_t K : grid.alphabets) {
      const auto symbols = gen_sequence({dist, K, grid.count, grid.seed});
      const double entropy = empirical_entropy(symbols, K);
      for (Mode mode : grid.modes) {
        const std::vector<RescaleVariant> rescales =
            mode == Mode::adaptive ? grid.rescales : std::vector<RescaleVariant>{RescaleVariant::orig};
        for (ModelFamily model : grid.models) {
          for (Strategy strategy : grid.strategies) {
            for (RescaleVariant rescale : rescales) {
              StreamConfig cfg{mode, model, rescale,
                               mode == Mode::adaptive ? grid.rescale_interval : 0, K};
              BenchRecord rec = run_cell(symbols, cfg, strategy, grid.timing_reps);
              rec.distribution = dist;
              rec.seed = grid.seed;
              rec.entropy_bits = entropy;
              if (progress) progress(rec);
              out.push_back(std::move(rec));
            }
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Iteration statistics.

struct IterationHistogram {
  std::vector<double> percent;  // index = iterations per symbol
  double average = 0;

  double share(std::size_t iterations) const {
    return iterations < percent.size() ? percent[iterations] : 0.0;
  }
};

/// Encodes `symbols` in static mode and replays the decoder's searches,
/// tallying how many iterations each symbol needed.
inline IterationHistogram iteration_histogram(Strategy strategy, std::span<const Symbol> symbols,
                                              std::uint32_t K) {
  const ModelFamily model = strategy == Strategy::bi ? ModelFamily::fenwick : ModelFamily::linear;
  const auto bytes = encode_stream(symbols, {Mode::fixed, model, RescaleVariant::orig, 0, K});
  DecodeStats ds;
  (void)decode_stream(bytes, strategy, ds);
  IterationHistogram h;
  const double n = symbols.empty() ? 1.0 : static_cast<double>(symbols.size());
  h.percent.resize(ds.probe_histogram.size());
  for (std::size_t i = 0; i < ds.probe_histogram.size(); ++i)
    h.percent[i] = 100.0 * static_cast<double>(ds.probe_histogram[i]) / n;
  h.average = static_cast<double>(ds.probes) / n;
  return h;
}

// ---------------------------------------------------------------------------
// CSV output.

inline constexpr const char* kCsvHeader =
    "mode,distribution,K,N,model,search,rescale,rescale_interval,seed,"
    "encode_ns_per_symbol,decode_ns_per_symbol,avg_search_iterations,"
    "avg_model_accesses_per_symbol,rescale_accesses,output_bytes,entropy_bits_per_symbol,"
    "skip_reason";

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline void write_csv_row(std::ostream& os, const BenchRecord& r) {
  std::ostringstream line;
  line.precision(6);
  line << mode_name(r.mode) << ',' << distribution_name(r.distribution) << ',' << r.alphabet << ','
       << r.count << ',' << model_name(r.model) << ',' << strategy_name(r.search) << ','
       << r.rescale << ',' << r.rescale_interval << ',' << r.seed << ',';
  if (r.skipped()) {
    line << ",,,,,,," << csv_field(r.skip_reason);
  } else {
    line << r.encode_ns_per_symbol << ',' << r.decode_ns_per_symbol << ','
         << r.avg_search_iterations << ',' << r.avg_model_accesses << ',' << r.rescale_accesses
         << ',' << r.output_bytes << ',' << r.entropy_bits << ',';
  }
  os << line.str() << "\r\n";
}

inline void write_csv(std::ostream& os, std::span<const BenchRecord> records) {
  os << kCsvHeader << "\r\n";
  for (const auto& r : records) write_csv_row(os, r);
}

}  // namespace irc
