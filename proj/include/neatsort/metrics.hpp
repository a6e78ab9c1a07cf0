#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace neatsort::metrics {

// All measures treat the input as distinct keys: repeated values are told
// apart by position, i.e. (x_i, i) pairs, so ties count as ordered.

using Keys = std::span<const std::int64_t>;

/// Stable ranks: rank[i] is the position x_i takes in a stable sort.
std::vector<std::size_t> stable_ranks(Keys x);

std::uint64_t inv(Keys x);
std::uint64_t dis(Keys x);
std::uint64_t max_disp(Keys x);
std::uint64_t exc(Keys x);
std::uint64_t rem(Keys x);
std::uint64_t runs(Keys x);
std::uint64_t sus(Keys x);

/// A cover count that is either exact or an upper bound.
struct CoverCount {
  std::uint64_t value = 0;
  bool exact = true;
};

/// Below this length `sms` runs an exact search; above it a greedy bound.
inline constexpr std::size_t kSmsExactLimit = 9;

CoverCount sms(Keys x);

/// Exact minimum monotone cover by branch-and-bound search. Exponential;
/// meant for short inputs.
std::uint64_t sms_exact(Keys x);

std::uint64_t enc(Keys x);
std::uint64_t osc(Keys x);

/// Per-position values of the regional-insertion model (1-based i in the
/// definitions, stored 0-based here; entry 0 is the first element).
///
///   distance[i]: earlier keys strictly between x_{i-1} and x_i, plus one
///   history[i]:  how many steps further back than x_{i-1} one has to look
///                to find an earlier key adjacent in value to x_i
///   regional[i]: min(history + distance, i - history)
///
/// Entry 0 holds distance 0, history 0 and regional 1.
struct RegTrace {
  std::vector<std::uint64_t> distance;
  std::vector<std::uint64_t> history;
  std::vector<std::uint64_t> regional;
};

struct RegResult {
  double log_reg = 0.0;          // sum over i >= 2 of log2(max(r_i, 1) + 1)
  std::uint64_t reg_product = 0;   // product over i >= 2 of (r_i - 1), saturating
  RegTrace trace;
};

RegResult reg(Keys x);

struct MetricReport {
  std::uint64_t inv = 0;
  std::uint64_t dis = 0;
  std::uint64_t max_disp = 0;
  std::uint64_t exc = 0;
  std::uint64_t rem = 0;
  std::uint64_t runs = 0;
  std::uint64_t sus = 0;
  std::uint64_t sms = 0;
  bool sms_exact = true;
  std::uint64_t enc = 0;
  std::uint64_t osc = 0;
  double log_reg = 0.0;
  std::uint64_t reg_product = 0;
};

MetricReport metric_report(Keys x);

/// key=value lines, one per field.
std::string format_report(const MetricReport& report);

}  // namespace neatsort::metrics
