#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "neatsort/core_sort.hpp"
#include "neatsort/element.hpp"
#include "neatsort/generators.hpp"

namespace neatsort::bench {

enum class Algorithm { NeatSort, MergeSort, QuickSort, IntroSort, MelSort };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algo);
std::vector<Algorithm> all_algorithms();

/// Anything that sorts a buffer in place and reports its counters. The seed
/// is only consumed by randomised algorithms.
using Sorter = std::function<SortStats(std::span<Element>, std::uint64_t seed)>;

struct AlgorithmEntry {
  std::string id;
  Sorter sort;
};

AlgorithmEntry make_entry(Algorithm algo, const core::MergePolicy& policy);

struct BenchConfig {
  std::vector<Algorithm> algorithms = all_algorithms();
  std::vector<std::size_t> sizes;
  gen::Family family = gen::Family::RandomPerm;
  std::optional<double> target_pct;
  std::uint64_t seed = 42;
  std::optional<std::size_t> trials;  // nullopt: default_trial_count(n)
  core::MergePolicy policy;
  Algorithm baseline = Algorithm::IntroSort;
  std::string output_path = "results.csv";

  /// Throws ConfigError on an empty size list, zero trials, no algorithms,
  /// or a missing/unexpected target percentage.
  void validate() const;
};

struct BenchRecord {
  std::string algo;
  std::size_t n = 0;
  std::string family;
  std::optional<double> target_pct;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t moves = 0;
  std::uint64_t elapsed_ns = 0;
  double inv_pct = 0.0;
  double runs_pct = 0.0;
  double maxdist_pct = 0.0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct SummaryRecord {
  std::string algo;
  std::size_t n = 0;
  std::string family;
  std::optional<double> target_pct;
  double median_ms = 0.0;
  double mean_ms = 0.0;
  std::uint64_t median_comparisons = 0;
  std::optional<double> rel_perf_pct;

  friend bool operator==(const SummaryRecord&, const SummaryRecord&) = default;
};

struct SuiteResult {
  std::vector<BenchRecord> trials;
  std::vector<SummaryRecord> summary;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An algorithm returned unsorted output. The message names the algorithm,
/// the trial seed and the generator spec so the input can be rebuilt.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Trial k of size n uses seed + k. Each algorithm sorts its own copy of the
/// trial input; only the sort call is timed.
SuiteResult run_suite(const BenchConfig& config);
SuiteResult run_suite(const BenchConfig& config,
                      std::span<const AlgorithmEntry> algorithms);

/// (t_baseline - t_subject) / max(t_baseline, t_subject) * 100. Throws
/// std::invalid_argument unless both durations are positive.
double relative_performance(double t_baseline, double t_subject);

/// Desk-scaled version of the reference trial table: the reference count for
/// n divided by 100, at least 31, bumped to the next odd number.
///
///   n <= 102,400         10,000  -> 101
///   n <= 409,600         50,000  -> 501
///   n <= 819,200         25,000  -> 251
///   n <= 1,638,400       10,000  -> 101
///   n <= 3,276,800        5,000  -> 51
///   n <= 26,214,400       1,000  -> 31
///   larger                  500  -> 31
std::size_t default_trial_count(std::size_t n);
std::string trial_table_text();

/// Lower middle order statistic; the exact middle for odd sizes.
std::uint64_t median(std::vector<std::uint64_t> values);
double mean(std::span<const std::uint64_t> values);

/// Summary of one (algo, n, family, target) cell. rel_perf_pct is left
/// unset.
SummaryRecord summarize_cell(std::span<const BenchRecord> cell);

/// Fills rel_perf_pct of every row whose (n, family, target) cell contains a
/// row for `baseline_id`.
void attach_relative_performance(std::vector<SummaryRecord>& rows,
                                 std::string_view baseline_id);

// CSV ---------------------------------------------------------------------

inline constexpr std::string_view kTrialHeader =
    "algo,n,family,target_pct,seed,trial,comparisons,moves,elapsed_ns,inv_pct,"
    "runs_pct,maxdist_pct";
inline constexpr std::string_view kSummaryHeader =
    "algo,n,family,target_pct,median_ms,mean_ms,median_comparisons,rel_perf_pct";

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_row(const BenchRecord& r);
std::string format_row(const SummaryRecord& r);
BenchRecord parse_trial_row(std::string_view line);
SummaryRecord parse_summary_row(std::string_view line);

void write_trials(std::ostream& os, std::span<const BenchRecord> rows);
void write_summary(std::ostream& os, std::span<const SummaryRecord> rows);
std::vector<BenchRecord> read_trials(std::istream& is);
std::vector<SummaryRecord> read_summary(std::istream& is);

/// "results.csv" -> "results_summary.csv".
std::string summary_path_for(std::string_view trials_path);

}  // namespace neatsort::bench
