#include "neatsort/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "neatsort/baselines.hpp"

namespace neatsort::bench {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw CsvError("cannot format value");
  return std::string(buf, end);
}

std::string format_opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void check_field(std::string_view s) {
  if (s.find_first_of(",\n\r\"") != std::string_view::npos) {
    throw CsvError("field '" + std::string(s) + "' cannot be written unquoted");
  }
}

std::vector<std::string_view> split_fields(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

template <class T>
T parse_int(std::string_view s, const char* column) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw CsvError(std::string("bad integer in column ") + column + ": '" +
                   std::string(s) + "'");
  }
  return value;
}

double parse_double(std::string_view s, const char* column) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw CsvError(std::string("bad number in column ") + column + ": '" +
                   std::string(s) + "'");
  }
  return value;
}

std::optional<double> parse_opt(std::string_view s, const char* column) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, column);
}

std::uint64_t trial_count(const BenchConfig& config, std::size_t n) {
  return config.trials ? *config.trials : default_trial_count(n);
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "neatsort") return Algorithm::NeatSort;
  if (name == "mergesort") return Algorithm::MergeSort;
  if (name == "quicksort") return Algorithm::QuickSort;
  if (name == "introsort") return Algorithm::IntroSort;
  if (name == "melsort") return Algorithm::MelSort;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::NeatSort: return "neatsort";
    case Algorithm::MergeSort: return "mergesort";
    case Algorithm::QuickSort: return "quicksort";
    case Algorithm::IntroSort: return "introsort";
    case Algorithm::MelSort: return "melsort";
  }
  return "?";
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::NeatSort, Algorithm::MergeSort, Algorithm::QuickSort,
          Algorithm::IntroSort, Algorithm::MelSort};
}

AlgorithmEntry make_entry(Algorithm algo, const core::MergePolicy& policy) {
  AlgorithmEntry e{std::string(to_string(algo)), {}};
  switch (algo) {
    case Algorithm::NeatSort:
      e.sort = [policy](std::span<Element> b, std::uint64_t) {
        return core::neat_sort(b, policy);
      };
      break;
    case Algorithm::MergeSort:
      e.sort = [](std::span<Element> b, std::uint64_t) { return baselines::merge_sort(b); };
      break;
    case Algorithm::QuickSort:
      e.sort = [](std::span<Element> b, std::uint64_t seed) {
        return baselines::quicksort_random(b, seed);
      };
      break;
    case Algorithm::IntroSort:
      e.sort = [](std::span<Element> b, std::uint64_t) {
        return baselines::introsort_hybrid(b);
      };
      break;
    case Algorithm::MelSort:
      e.sort = [](std::span<Element> b, std::uint64_t) { return baselines::melsort(b); };
      break;
  }
  return e;
}

void BenchConfig::validate() const {
  if (algorithms.empty()) throw ConfigError("no algorithms selected");
  if (sizes.empty()) throw ConfigError("no sizes given");
  if (trials && *trials == 0) throw ConfigError("trials must be at least 1");
  if (gen::uses_target(family) && !target_pct) {
    throw ConfigError("family '" + std::string(gen::to_string(family)) +
                      "' needs a target percentage");
  }
  if (!gen::uses_target(family) && target_pct) {
    throw ConfigError("family '" + std::string(gen::to_string(family)) +
                      "' takes no target percentage");
  }
  if (!(policy.p >= 1.0 && policy.p <= 2.0)) {
    throw ConfigError("merge factor p must lie in [1.0, 2.0]");
  }
}

SuiteResult run_suite(const BenchConfig& config) {
  config.validate();
  std::vector<AlgorithmEntry> entries;
  for (Algorithm a : config.algorithms) entries.push_back(make_entry(a, config.policy));
  return run_suite(config, entries);
}

SuiteResult run_suite(const BenchConfig& config,
                      std::span<const AlgorithmEntry> algorithms) {
  if (algorithms.empty()) throw ConfigError("no algorithms selected");
  if (config.sizes.empty()) throw ConfigError("no sizes given");
  if (config.trials && *config.trials == 0) throw ConfigError("trials must be at least 1");

  SuiteResult result;
  const std::string family(gen::to_string(config.family));
  std::vector<Element> work;

  for (std::size_t n : config.sizes) {
    const std::uint64_t trials = trial_count(config, n);
    const std::size_t first_row = result.trials.size();

    for (std::uint64_t k = 0; k < trials; ++k) {
      const gen::GeneratorSpec spec{config.family, n, config.target_pct,
                                    config.seed + k};
      std::vector<Element> input;
      try {
        input = gen::generate(spec);
      } catch (const gen::InfeasibleSpec& e) {
        throw ConfigError(e.what());
      }
      const gen::Achieved achieved = gen::verify(spec, input);

      for (const AlgorithmEntry& algo : algorithms) {
        work = input;
        const std::uint64_t algo_seed = gen::mix_seed(spec.seed, 0x51);
        const auto t0 = std::chrono::steady_clock::now();
        const SortStats stats = algo.sort(work, algo_seed);
        const auto t1 = std::chrono::steady_clock::now();

        if (work.size() != input.size() || !is_sorted_by_key(work)) {
          throw VerificationError("algorithm '" + algo.id +
                                  "' produced unsorted output; seed=" +
                                  std::to_string(spec.seed) +
                                  " spec=" + gen::to_json(spec));
        }
        const auto ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();

        BenchRecord r;
        r.algo = algo.id;
        r.n = n;
        r.family = family;
        r.target_pct = config.target_pct;
        r.seed = spec.seed;
        r.trial = static_cast<std::size_t>(k);
        r.comparisons = stats.comparisons;
        r.moves = stats.moves;
        r.elapsed_ns = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(ns));
        r.inv_pct = achieved.inv_pct;
        r.runs_pct = achieved.runs_pct;
        r.maxdist_pct = achieved.maxdist_pct;
        result.trials.push_back(std::move(r));
      }
    }

    for (const AlgorithmEntry& algo : algorithms) {
      std::vector<BenchRecord> cell;
      for (std::size_t i = first_row; i < result.trials.size(); ++i) {
        if (result.trials[i].algo == algo.id) cell.push_back(result.trials[i]);
      }
      result.summary.push_back(summarize_cell(cell));
    }
  }

  attach_relative_performance(result.summary, to_string(config.baseline));
  return result;
}

double relative_performance(double t_baseline, double t_subject) {
  if (!(t_baseline > 0.0) || !(t_subject > 0.0)) {
    throw std::invalid_argument("relative_performance: durations must be positive");
  }
  return (t_baseline - t_subject) / std::max(t_baseline, t_subject) * 100.0;
}

std::size_t default_trial_count(std::size_t n) {
  std::size_t reference = 500;
  if (n <= 102'400) {
    reference = 10'000;
  } else if (n <= 409'600) {
    reference = 50'000;
  } else if (n <= 819'200) {
    reference = 25'000;
  } else if (n <= 1'638'400) {
    reference = 10'000;
  } else if (n <= 3'276'800) {
    reference = 5'000;
  } else if (n <= 26'214'400) {
    reference = 1'000;
  }
  std::size_t trials = std::max<std::size_t>(31, reference / 100);
  if (trials % 2 == 0) ++trials;
  return trials;
}

std::string trial_table_text() {
  return "Trials per size with --trials auto:\n"
         "  n <= 102400     -> 101\n"
         "  n <= 409600     -> 501\n"
         "  n <= 819200     -> 251\n"
         "  n <= 1638400    -> 101\n"
         "  n <= 3276800    -> 51\n"
         "  larger          -> 31\n";
}

std::uint64_t median(std::vector<std::uint64_t> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  const std::size_t mid = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  return values[mid];
}

double mean(std::span<const std::uint64_t> values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty sample");
  long double sum = 0;
  for (auto v : values) sum += static_cast<long double>(v);
  return static_cast<double>(sum / static_cast<long double>(values.size()));
}

SummaryRecord summarize_cell(std::span<const BenchRecord> cell) {
  if (cell.empty()) throw std::invalid_argument("summarize_cell: empty cell");
  std::vector<std::uint64_t> ns;
  std::vector<std::uint64_t> cmp;
  for (const auto& r : cell) {
    ns.push_back(r.elapsed_ns);
    cmp.push_back(r.comparisons);
  }
  SummaryRecord s;
  s.algo = cell.front().algo;
  s.n = cell.front().n;
  s.family = cell.front().family;
  s.target_pct = cell.front().target_pct;
  s.mean_ms = mean(ns) / 1e6;
  s.median_ms = static_cast<double>(median(std::move(ns))) / 1e6;
  s.median_comparisons = median(std::move(cmp));
  return s;
}

void attach_relative_performance(std::vector<SummaryRecord>& rows,
                                 std::string_view baseline_id) {
  using CellKey = std::tuple<std::size_t, std::string, std::optional<double>>;
  std::map<CellKey, double> baseline_ms;
  for (const auto& r : rows) {
    if (r.algo == baseline_id) baseline_ms[{r.n, r.family, r.target_pct}] = r.median_ms;
  }
  for (auto& r : rows) {
    auto it = baseline_ms.find({r.n, r.family, r.target_pct});
    if (it == baseline_ms.end() || !(it->second > 0.0) || !(r.median_ms > 0.0)) {
      r.rel_perf_pct.reset();
      continue;
    }
    r.rel_perf_pct = relative_performance(it->second, r.median_ms);
  }
}

std::string format_row(const BenchRecord& r) {
  check_field(r.algo);
  check_field(r.family);
  std::string out;
  out += r.algo;
  out += ',' + std::to_string(r.n);
  out += ',' + r.family;
  out += ',' + format_opt(r.target_pct);
  out += ',' + std::to_string(r.seed);
  out += ',' + std::to_string(r.trial);
  out += ',' + std::to_string(r.comparisons);
  out += ',' + std::to_string(r.moves);
  out += ',' + std::to_string(r.elapsed_ns);
  out += ',' + format_double(r.inv_pct);
  out += ',' + format_double(r.runs_pct);
  out += ',' + format_double(r.maxdist_pct);
  return out;
}

std::string format_row(const SummaryRecord& r) {
  check_field(r.algo);
  check_field(r.family);
  std::string out;
  out += r.algo;
  out += ',' + std::to_string(r.n);
  out += ',' + r.family;
  out += ',' + format_opt(r.target_pct);
  out += ',' + format_double(r.median_ms);
  out += ',' + format_double(r.mean_ms);
  out += ',' + std::to_string(r.median_comparisons);
  out += ',' + format_opt(r.rel_perf_pct);
  return out;
}

BenchRecord parse_trial_row(std::string_view line) {
  const auto f = split_fields(line);
  if (f.size() != 12) {
    throw CsvError("trial row needs 12 fields, got " + std::to_string(f.size()));
  }
  BenchRecord r;
  r.algo = std::string(f[0]);
  r.n = parse_int<std::size_t>(f[1], "n");
  r.family = std::string(f[2]);
  r.target_pct = parse_opt(f[3], "target_pct");
  r.seed = parse_int<std::uint64_t>(f[4], "seed");
  r.trial = parse_int<std::size_t>(f[5], "trial");
  r.comparisons = parse_int<std::uint64_t>(f[6], "comparisons");
  r.moves = parse_int<std::uint64_t>(f[7], "moves");
  r.elapsed_ns = parse_int<std::uint64_t>(f[8], "elapsed_ns");
  r.inv_pct = parse_double(f[9], "inv_pct");
  r.runs_pct = parse_double(f[10], "runs_pct");
  r.maxdist_pct = parse_double(f[11], "maxdist_pct");
  return r;
}

SummaryRecord parse_summary_row(std::string_view line) {
  const auto f = split_fields(line);
  if (f.size() != 8) {
    throw CsvError("summary row needs 8 fields, got " + std::to_string(f.size()));
  }
  SummaryRecord r;
  r.algo = std::string(f[0]);
  r.n = parse_int<std::size_t>(f[1], "n");
  r.family = std::string(f[2]);
  r.target_pct = parse_opt(f[3], "target_pct");
  r.median_ms = parse_double(f[4], "median_ms");
  r.mean_ms = parse_double(f[5], "mean_ms");
  r.median_comparisons = parse_int<std::uint64_t>(f[6], "median_comparisons");
  r.rel_perf_pct = parse_opt(f[7], "rel_perf_pct");
  return r;
}

void write_trials(std::ostream& os, std::span<const BenchRecord> rows) {
  os << kTrialHeader << '\n';
  for (const auto& r : rows) os << format_row(r) << '\n';
}

void write_summary(std::ostream& os, std::span<const SummaryRecord> rows) {
  os << kSummaryHeader << '\n';
  for (const auto& r : rows) os << format_row(r) << '\n';
}

namespace {

template <class Row, class Parse>
std::vector<Row> read_rows(std::istream& is, std::string_view header, Parse parse) {
  std::string line;
  if (!std::getline(is, line)) throw CsvError("missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw CsvError("unexpected header: " + line);
  std::vector<Row> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    rows.push_back(parse(line));
  }
  return rows;
}

}  // namespace

std::vector<BenchRecord> read_trials(std::istream& is) {
  return read_rows<BenchRecord>(is, kTrialHeader, parse_trial_row);
}

std::vector<SummaryRecord> read_summary(std::istream& is) {
  return read_rows<SummaryRecord>(is, kSummaryHeader, parse_summary_row);
}

std::string summary_path_for(std::string_view trials_path) {
  constexpr std::string_view ext = ".csv";
  if (trials_path.size() >= ext.size() &&
      trials_path.substr(trials_path.size() - ext.size()) == ext) {
    return std::string(trials_path.substr(0, trials_path.size() - ext.size())) +
           "_summary.csv";
  }
  return std::string(trials_path) + "_summary.csv";
}

}  // namespace neatsort::bench
