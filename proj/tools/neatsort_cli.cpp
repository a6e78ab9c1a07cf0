// Command-line front end: bench, sort, metrics, gen.
//
// Exit codes: 0 success, 2 configuration error, 3 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "neatsort/baselines.hpp"
#include "neatsort/bench.hpp"
#include "neatsort/core_sort.hpp"
#include "neatsort/generators.hpp"
#include "neatsort/metrics.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;

using namespace neatsort;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::int64_t> read_integers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bench::ConfigError("cannot open input file '" + path + "'");
  std::vector<std::int64_t> keys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(line, &used);
      if (used != line.size()) throw std::invalid_argument("trailing characters");
      keys.push_back(v);
    } catch (const std::exception&) {
      throw bench::ConfigError(path + ":" + std::to_string(lineno) +
                               ": not an integer: '" + line + "'");
    }
  }
  return keys;
}

void write_integers(const std::string& path, const std::vector<Element>& elems) {
  std::ofstream out(path);
  if (!out) throw bench::ConfigError("cannot open output file '" + path + "'");
  for (const auto& e : elems) out << e.key << '\n';
}

struct BenchArgs {
  std::string algos = "neatsort,mergesort,quicksort,introsort,melsort";
  std::string family = "random";
  std::optional<double> pct;
  std::string sizes;
  std::string trials = "auto";
  std::uint64_t seed = 42;
  double p = 1.3;
  std::string merge_mode = "triple-p";
  std::string baseline = "introsort";
  std::string out = "results.csv";
};

int run_bench(const BenchArgs& args) {
  bench::BenchConfig config;
  config.algorithms.clear();
  for (const auto& name : split_list(args.algos)) {
    config.algorithms.push_back(bench::parse_algorithm(name));
  }
  config.family = gen::parse_family(args.family);
  config.target_pct = args.pct;
  for (const auto& s : split_list(args.sizes)) {
    try {
      config.sizes.push_back(static_cast<std::size_t>(std::stoull(s)));
    } catch (const std::exception&) {
      throw bench::ConfigError("bad size '" + s + "'");
    }
  }
  if (args.trials != "auto") {
    try {
      config.trials = static_cast<std::size_t>(std::stoull(args.trials));
    } catch (const std::exception&) {
      throw bench::ConfigError("--trials expects 'auto' or a count");
    }
  }
  config.seed = args.seed;
  config.policy = core::MergePolicy::make(core::parse_merge_mode(args.merge_mode), args.p);
  config.baseline = bench::parse_algorithm(args.baseline);
  config.output_path = args.out;

  const auto result = bench::run_suite(config);

  std::ofstream trials_out(config.output_path);
  if (!trials_out) throw bench::ConfigError("cannot write '" + config.output_path + "'");
  bench::write_trials(trials_out, result.trials);

  const std::string summary_path = bench::summary_path_for(config.output_path);
  std::ofstream summary_out(summary_path);
  if (!summary_out) throw bench::ConfigError("cannot write '" + summary_path + "'");
  bench::write_summary(summary_out, result.summary);

  for (const auto& s : result.summary) {
    std::cout << s.algo << " n=" << s.n << " median_ms=" << s.median_ms
              << " median_cmp=" << s.median_comparisons;
    if (s.rel_perf_pct) std::cout << " rel_perf=" << *s.rel_perf_pct << "%";
    std::cout << '\n';
  }
  std::cout << "wrote " << config.output_path << " and " << summary_path << '\n';
  return 0;
}

int run_sort(const std::string& algo_name, const std::string& in_path,
             const std::string& out_path, double p, std::uint64_t seed) {
  const auto algo = bench::parse_algorithm(algo_name);
  const auto entry = bench::make_entry(
      algo, core::MergePolicy::make(core::MergeMode::TripleP, p));
  auto elems = tag_keys(read_integers(in_path));
  entry.sort(elems, seed);
  if (!is_sorted_by_key(elems)) {
    std::cerr << "error: " << algo_name << " produced unsorted output\n";
    return kExitVerification;
  }
  write_integers(out_path, elems);
  return 0;
}

int run_metrics(const std::string& in_path) {
  const auto keys = read_integers(in_path);
  std::cout << metrics::format_report(metrics::metric_report(keys));
  return 0;
}

int run_gen(const std::string& spec_path, const std::string& out_path) {
  std::ifstream in(spec_path);
  if (!in) throw bench::ConfigError("cannot open spec file '" + spec_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto spec = gen::spec_from_json(buf.str());
  write_integers(out_path, gen::generate(spec));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NeatSort adaptive sorting: benchmark harness and tools"};
  app.require_subcommand(1);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run interleaved timing trials and write CSV");
  bench_cmd->footer(neatsort::bench::trial_table_text());
  bench_cmd->add_option("--algos", bench_args.algos,
                        "Comma list of neatsort,mergesort,quicksort,introsort,melsort")
      ->capture_default_str();
  bench_cmd->add_option("--family", bench_args.family,
                        "sorted|reversed|random|inversion-pct|runs-pct|maxdist-pct|half-asc-desc")
      ->capture_default_str();
  bench_cmd->add_option("--pct", bench_args.pct, "Target percentage for *-pct families");
  bench_cmd->add_option("--sizes", bench_args.sizes, "Comma list of array sizes")->required();
  bench_cmd->add_option("--trials", bench_args.trials, "'auto' or a trial count")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed, "Base seed; trial k uses seed+k")
      ->capture_default_str();
  bench_cmd->add_option("--p", bench_args.p, "NeatSort merge factor in [1,2]")
      ->capture_default_str();
  bench_cmd->add_option("--merge-mode", bench_args.merge_mode,
                        "adjacent-pairs|leftmost|leave-out-longest|triple-p")
      ->capture_default_str();
  bench_cmd->add_option("--baseline", bench_args.baseline,
                        "Algorithm used as the relative-performance reference")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "Trial CSV path (summary goes to *_summary.csv)")
      ->capture_default_str();

  std::string sort_algo = "neatsort", sort_in, sort_out;
  double sort_p = 1.3;
  std::uint64_t sort_seed = 42;
  auto* sort_cmd = app.add_subcommand("sort", "Sort a file of newline-separated integers");
  sort_cmd->add_option("--algo", sort_algo, "Algorithm")->capture_default_str();
  sort_cmd->add_option("--in", sort_in, "Input file")->required();
  sort_cmd->add_option("--out", sort_out, "Output file")->required();
  sort_cmd->add_option("--p", sort_p, "NeatSort merge factor")->capture_default_str();
  sort_cmd->add_option("--seed", sort_seed, "Quicksort seed")->capture_default_str();

  std::string metrics_in;
  auto* metrics_cmd = app.add_subcommand("metrics", "Print disorder measures of a file");
  metrics_cmd->add_option("--in", metrics_in, "Input file")->required();

  std::string gen_spec, gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an input file from a JSON spec");
  gen_cmd->add_option("--spec", gen_spec, "JSON file with family, n, target_pct, seed")
      ->required();
  gen_cmd->add_option("--out", gen_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*bench_cmd) return run_bench(bench_args);
    if (*sort_cmd) return run_sort(sort_algo, sort_in, sort_out, sort_p, sort_seed);
    if (*metrics_cmd) return run_metrics(metrics_in);
    if (*gen_cmd) return run_gen(gen_spec, gen_out);
  } catch (const neatsort::bench::VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
