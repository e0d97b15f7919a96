#pragma once

// Command-line front end: gen, encode, decode, bench, selftest.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "irc/bench.hpp"
#include "irc/datagen.hpp"
#include "irc/selftest.hpp"
#include "irc/stream.hpp"

namespace irc {

namespace detail {

inline void print_table1(std::ostream& out, std::uint64_t n, std::uint64_t seed) {
  constexpr std::uint32_t K = 64;
  const auto symbols = gen_sequence({Distribution::geometric, K, n, seed});
  out << "iterations per symbol (%), K=64 geometric, N=" << n << "\n";
  out << std::setw(6) << "iter";
  for (int i = 1; i <= 15; ++i) out << std::setw(7) << i;
  out << std::setw(7) << "ave." << "\n";
  for (Strategy s : {Strategy::log, Strategy::tree, Strategy::log2, Strategy::exp, Strategy::bi}) {
    const auto h = iteration_histogram(s, symbols, K);
    out << std::setw(6) << strategy_name(s) << std::fixed << std::setprecision(2);
    for (std::size_t i = 1; i <= 15; ++i) out << std::setw(7) << h.share(i);
    out << std::setw(7) << std::setprecision(2) << h.average << "\n";
    out.unsetf(std::ios::fixed);
  }
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Interval range coding toolkit"};
  app.require_subcommand(1);

  std::string dist = "flat", input, output, mode = "adaptive", model = "linear", rescale = "orig",
              search = "log", suite = "static", csv;
  std::uint32_t k = 256, rescale_interval = 0;
  std::uint64_t n = 1'000'000, seed = 1;
  int reps = 5;
  unsigned max_log2 = 10;

  auto* gen = app.add_subcommand("gen", "generate a synthetic ISY1 symbol file");
  gen->add_option("--dist", dist, "flat | geom")->check(CLI::IsMember({"flat", "geom", "geometric"}));
  gen->add_option("--k", k, "alphabet size")->check(CLI::Range(1U, kMaxFileAlphabet));
  gen->add_option("--n", n, "number of symbols");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("-o,--output", output, "output file")->required();

  auto* enc = app.add_subcommand("encode", "compress an ISY1 symbol file");
  enc->add_option("--mode", mode, "static | adaptive")->check(CLI::IsMember({"static", "adaptive"}));
  enc->add_option("--model", model, "linear | fenwick")->check(CLI::IsMember({"linear", "fenwick"}));
  enc->add_option("--rescale", rescale, "orig | new")->check(CLI::IsMember({"orig", "new"}));
  enc->add_option("--rescale-interval", rescale_interval, "symbols between forced rescales (0 = cap only)");
  enc->add_option("-i,--input", input, "ISY1 input")->required();
  enc->add_option("-o,--output", output, "IRC1 output")->required();

  auto* dec = app.add_subcommand("decode", "decompress an IRC1 stream");
  dec->add_option("--search", search, "lin-fwd | lin-bwd | log | log2 | exp | tree | table | bi");
  dec->add_option("-i,--input", input, "IRC1 input")->required();
  dec->add_option("-o,--output", output, "ISY1 output")->required();

  auto* bench = app.add_subcommand("bench", "run the benchmark grid");
  bench->add_option("--suite", suite, "static | adaptive | all | table1")
      ->check(CLI::IsMember({"static", "adaptive", "all", "table1"}));
  bench->add_option("--n", n, "symbols per sequence");
  bench->add_option("--csv", csv, "CSV output file (default: stdout)");
  bench->add_option("--seed", seed, "generator seed");
  bench->add_option("--reps", reps, "timing repetitions per cell (minimum is kept)")
      ->check(CLI::Range(0, 100));
  bench->add_option("--max-log2", max_log2, "largest alphabet is 2^max-log2")->check(CLI::Range(1U, 16U));

  auto* selftest = app.add_subcommand("selftest", "check the built-in reference fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) {
      const auto symbols = gen_sequence({parse_distribution(dist), k, n, seed});
      write_file(output, serialize_symbols({k, symbols}));
    } else if (*enc) {
      const auto file = parse_symbols(read_file(input));
      StreamConfig cfg{parse_mode(mode), parse_model(model), parse_rescale(rescale), rescale_interval,
                       file.alphabet};
      write_file(output, encode_stream(file.symbols, cfg));
    } else if (*dec) {
      const Strategy strategy = parse_strategy(search);
      const auto bytes = read_file(input);
      const auto header = read_header(bytes);
      auto symbols = decode_stream(bytes, strategy);
      write_file(output, serialize_symbols({header.config.alphabet, std::move(symbols)}));
    } else if (*bench) {
      if (suite == "table1") {
        detail::print_table1(out, n, seed);
        return 0;
      }
      std::vector<GridSpec> grids;
      if (suite == "static" || suite == "all") grids.push_back(static_suite(n));
      if (suite == "adaptive" || suite == "all") grids.push_back(adaptive_suite(n));
      std::ofstream file;
      if (!csv.empty()) {
        file.open(csv, std::ios::binary);
        if (!file) throw Error(Errc::io, "cannot create '" + csv + "'");
      }
      std::ostream& sink = csv.empty() ? out : file;
      sink << kCsvHeader << "\r\n";
      for (auto& grid : grids) {
        grid.seed = seed;
        grid.timing_reps = reps;
        grid.alphabets = power_of_two_alphabets(max_log2);
        run_suite(grid, [&](const BenchRecord& r) {
          write_csv_row(sink, r);
          sink.flush();
        });
      }
    } else if (*selftest) {
      bool ok = true;
      for (const auto& check : fixtures::run_all()) {
        out << (check.passed ? "PASS  " : "FAIL  ") << check.name << "\n";
        ok = ok && check.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace irc
