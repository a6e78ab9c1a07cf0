// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check prints the measured quantity next to its limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "neatsort/baselines.hpp"
#include "neatsort/bench.hpp"
#include "neatsort/core_sort.hpp"
#include "neatsort/generators.hpp"
#include "neatsort/metrics.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace neatsort;
using neatsort::testing::elems;
using neatsort::testing::keys;
using neatsort::testing::random_tagged;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool same_as_stable_sort(std::vector<Element> input, const core::MergePolicy& policy) {
  auto expect = input;
  std::stable_sort(expect.begin(), expect.end(),
                   [](const Element& a, const Element& b) { return a.key < b.key; });
  core::neat_sort(input, policy);
  return input == expect;
}

Outcome correctness_and_stability() {
  Outcome o;
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> size(0, 512);
  const auto t0 = Clock::now();
  const std::int64_t ranges[] = {2, 8, 64, 1'000'000'000};
  std::size_t count = 0;
  for (; count < 10'000; ++count) {
    const auto input = random_tagged(rng, size(rng), ranges[count % 4]);
    if (!same_as_stable_sort(input, {})) {
      o.fail(fmt("mismatch on array %.0f", static_cast<double>(count)));
      break;
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 30.0) o.fail(fmt("took %.2f s (limit 30 s)", secs));
  if (o.pass) o.detail = fmt("%.0f arrays identical to stable sort in %.2f s", count, secs);
  return o;
}

Outcome optimal_extremes() {
  Outcome o;
  for (std::size_t n : {1ul, 2ul, 3ul, 10ul, 1000ul, 65537ul}) {
    std::vector<std::int64_t> asc(n);
    std::iota(asc.begin(), asc.end(), 0);
    auto a = elems(asc);
    const auto sa = core::neat_sort(a);
    if (sa.runs_detected != 1 || sa.comparisons != n - 1 || sa.merge_passes != 0)
      o.fail(fmt("sorted n=%.0f: runs=%.0f comparisons=%.0f", n, sa.runs_detected, sa.comparisons));

    std::vector<std::int64_t> desc(asc.rbegin(), asc.rend());
    auto d = elems(desc);
    const auto sd = core::neat_sort(d);
    if (sd.runs_detected != 1 || sd.comparisons > n)
      o.fail(fmt("reversed n=%.0f: runs=%.0f comparisons=%.0f", n, sd.runs_detected, sd.comparisons));
  }
  if (o.pass) o.detail = "sorted: 1 run, n-1 comparisons, 0 passes; reversed: 1 run, <= n comparisons";
  return o;
}

Outcome half_and_half() {
  Outcome o;
  for (std::size_t n : {9ul, 10ul, 1001ul}) {
    auto x = gen::generate({gen::Family::HalfAscHalfDesc, n, std::nullopt, 0});
    SortStats stats;
    const auto runs = core::detect_runs(x, stats);
    const std::uint64_t expect_moves = 3 * (((n + 1) / 2) / 2);
    if (runs.size() != 2 || stats.moves != expect_moves)
      o.fail(fmt("n=%.0f: runs=%.0f moves=%.0f", n, runs.size(), stats.moves));
  }
  if (o.pass) o.detail = "n in {9,10,1001}: 2 runs, 3*floor(ceil(n/2)/2) reversal moves";
  return o;
}

Outcome run_count_cap() {
  Outcome o;
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> size(1, 2000);
  for (int i = 0; i < 10'000; ++i) {
    const std::size_t n = size(rng);
    auto x = random_tagged(rng, n, i % 2 ? 5 : 1'000'000);
    SortStats stats;
    const auto runs = core::detect_runs(x, stats);
    if (runs.size() > (n + 1) / 2) {
      o.fail(fmt("n=%.0f: %.0f runs", n, runs.size()));
      break;
    }
  }
  if (o.pass) o.detail = "10000 random inputs, runs <= ceil(n/2)";
  return o;
}

Outcome worked_sequence_metrics() {
  Outcome o;
  const std::vector<std::int64_t> s1{1, 8, 4, 3, 7, 6, 2, 5, 10};
  const auto r = metrics::metric_report(s1);
  const std::pair<const char*, std::pair<std::uint64_t, std::uint64_t>> rows[] = {
      {"max", {r.max_disp, 6}}, {"exc", {r.exc, 4}},  {"rem", {r.rem, 5}},
      {"runs", {r.runs, 4}},    {"sus", {r.sus, 4}},  {"sms", {r.sms, 3}},
      {"inv", {r.inv, 14}},     {"enc", {r.enc, 3}},  {"dis", {r.dis, 6}},
  };
  for (const auto& [name, v] : rows) {
    if (v.first != v.second)
      o.fail(std::string(name) + fmt(" = %.0f, expected %.0f", v.first, v.second));
  }
  if (!r.sms_exact) o.fail("sms not exact");
  if (o.pass) o.detail = "max=6 exc=4 rem=5 runs=4 sus=4 sms=3 inv=14 enc=3 dis=6";
  return o;
}

Outcome worst_case_bound() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst_ratio = 0;
  for (int e : {8, 10, 12, 14, 16}) {
    const std::size_t n = std::size_t{1} << e;
    const double bound = 1.1 * n * e + 2.0 * n;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto x = gen::generate({gen::Family::RandomPerm, n, std::nullopt, seed});
      const auto st = core::neat_sort(x);
      worst_ratio = std::max(worst_ratio, st.comparisons / bound);
      if (st.comparisons > bound || !is_sorted_by_key(x))
        o.fail(fmt("n=2^%.0f seed=%.0f: %.0f comparisons", e, seed, st.comparisons));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60.0) o.fail(fmt("took %.2f s (limit 60 s)", secs));
  if (o.pass) o.detail = fmt("max comparisons/bound = %.4f over 100 inputs, %.2f s", worst_ratio, secs);
  return o;
}

Outcome runs_adaptivity() {
  Outcome o;
  const std::size_t n = std::size_t{1} << 16;
  double worst_ratio = 0;
  for (double pct : {1.0, 5.0, 10.0}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto x = gen::generate({gen::Family::RunsPct, n, pct, seed});
      const auto r = metrics::runs(keys(x));
      const double bound = 3.0 * n * (1.0 + std::log2(r + 1.0));
      const auto st = core::neat_sort(x);
      worst_ratio = std::max(worst_ratio, st.comparisons / bound);
      if (st.comparisons > bound)
        o.fail(fmt("pct=%.0f seed=%.0f: %.0f comparisons", pct, seed, st.comparisons));
    }
  }
  if (o.pass) o.detail = fmt("runs 1/5/10%% at n=2^16: max comparisons/bound = %.4f", worst_ratio);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(88);
  std::uniform_int_distribution<std::size_t> size(0, 256);
  for (int i = 0; i < 1000; ++i) {
    const auto x = keys(random_tagged(rng, size(rng), i % 2 ? 10 : 100000));
    if (metrics::inv(x) != oracle::inv_oracle(x)) o.fail("inv differs from the pair oracle");
  }
  std::size_t perms = 0;
  for (std::size_t n = 0; n <= 7; ++n) {
    std::vector<std::int64_t> p(n);
    std::iota(p.begin(), p.end(), 1);
    do {
      ++perms;
      if (metrics::sus(p) != oracle::sus_oracle(p)) o.fail("sus differs from exhaustive search");
      if (metrics::sms_exact(p) != oracle::sms_oracle(p)) o.fail("sms differs from exhaustive search");
    } while (std::next_permutation(p.begin(), p.end()));
  }
  if (o.pass) o.detail = fmt("inv on 1000 arrays; sus and sms on all %.0f permutations n <= 7", perms);
  return o;
}

Outcome merging_point_equations() {
  Outcome o;
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  std::size_t checked = 0;
  while (checked < 10'000) {
    auto L = random_tagged(rng, len(rng), 30);
    auto R = random_tagged(rng, len(rng), 30);
    auto by_key = [](const Element& a, const Element& b) { return a.key < b.key; };
    std::sort(L.begin(), L.end(), by_key);
    std::sort(R.begin(), R.end(), by_key);
    if (!(R.front().key < L.back().key)) continue;
    ++checked;
    if (!oracle::merging_points_hold(L, R, core::compute_merging_points(L, R))) {
      o.fail(fmt("violation on pair %.0f", checked));
      break;
    }
  }
  if (o.pass) o.detail = "10000 random run pairs";
  return o;
}

std::uint64_t median_comparisons(gen::Family family, std::optional<double> pct, std::size_t n,
                                 std::size_t trials) {
  bench::BenchConfig cfg;
  cfg.algorithms = {bench::Algorithm::NeatSort};
  cfg.sizes = {n};
  cfg.family = family;
  cfg.target_pct = pct;
  cfg.trials = trials;
  return bench::run_suite(cfg).summary.at(0).median_comparisons;
}

Outcome bowl_shape() {
  Outcome o;
  const std::size_t n = 100'000;
  const double lo = static_cast<double>(median_comparisons(gen::Family::InversionPct, 0.0, n, 11));
  const double mid = static_cast<double>(median_comparisons(gen::Family::InversionPct, 50.0, n, 11));
  const double hi = static_cast<double>(median_comparisons(gen::Family::InversionPct, 100.0, n, 11));
  if (lo > 0.5 * mid || hi > 0.5 * mid)
    o.fail(fmt("0%%: %.0f, 50%%: %.0f, 100%%: %.0f", lo, mid, hi));
  else
    o.detail = fmt("median comparisons 0%%: %.0f, 50%%: %.0f, 100%%: %.0f", lo, mid, hi);
  return o;
}

Outcome adaptive_speedup() {
  Outcome o;
  auto median_ms = [](gen::Family f) {
    bench::BenchConfig cfg;
    cfg.algorithms = {bench::Algorithm::NeatSort};
    cfg.sizes = {1'000'000};
    cfg.family = f;
    cfg.trials = 31;
    return bench::run_suite(cfg).summary.at(0).median_ms;
  };
  const double sorted_ms = median_ms(gen::Family::Sorted);
  const double random_ms = median_ms(gen::Family::RandomPerm);
  const double ratio = sorted_ms / random_ms;
  const std::string d = fmt("sorted %.3f ms, random %.3f ms, ratio %.4f (limit 0.2)", sorted_ms,
                            random_ms, ratio);
  if (ratio > 0.2) o.fail(d);
  else o.detail = d;
  return o;
}

Outcome melsort_conformance() {
  Outcome o;
  std::mt19937_64 rng(1212);
  std::uniform_int_distribution<std::size_t> size(0, 3000);
  for (int i = 0; i < 1000; ++i) {
    auto x = random_tagged(rng, size(rng), i % 3 ? 1'000'000 : 16);
    const auto k = keys(x);
    auto sorted = k;
    std::sort(sorted.begin(), sorted.end());
    const auto st = baselines::melsort(x);
    if (st.runs_detected != metrics::enc(k)) o.fail(fmt("list count differs on input %.0f", i));
    if (keys(x) != sorted) o.fail(fmt("unsorted output on input %.0f", i));
  }
  if (o.pass) o.detail = "1000 inputs: enc == list count, output sorted";
  return o;
}

Outcome csv_and_median() {
  Outcome o;
  std::mt19937_64 rng(1313);
  std::uniform_real_distribution<double> pct(0.0, 100.0);
  std::vector<bench::BenchRecord> rows;
  for (int i = 0; i < 1000; ++i) {
    bench::BenchRecord r;
    r.algo = to_string(bench::all_algorithms()[rng() % 5]);
    r.n = rng() % 5'000'000;
    r.family = "inversion-pct";
    if (i % 4) r.target_pct = pct(rng);
    r.seed = rng();
    r.trial = static_cast<std::size_t>(i);
    r.comparisons = rng();
    r.moves = rng();
    r.elapsed_ns = rng() | 1;
    r.inv_pct = pct(rng);
    r.runs_pct = pct(rng);
    r.maxdist_pct = pct(rng);
    rows.push_back(r);
  }
  std::stringstream ss;
  bench::write_trials(ss, rows);
  if (bench::read_trials(ss) != rows) o.fail("trial rows do not round-trip");

  std::vector<bench::BenchRecord> cell(31);
  for (std::size_t i = 0; i < cell.size(); ++i) {
    cell[i].algo = "neatsort";
    cell[i].elapsed_ns = 1'000'000 + 1000 * i;
  }
  const auto plain = bench::summarize_cell(cell);
  cell[30].elapsed_ns *= 100;
  const auto spiked = bench::summarize_cell(cell);
  if (plain.median_ms != spiked.median_ms) o.fail("outlier moved the median");
  if (!(spiked.mean_ms > plain.mean_ms)) o.fail("outlier did not move the mean");
  if (o.pass) o.detail = fmt("1000 rows round-trip; median %.3f ms unchanged by a 100x outlier",
                             plain.median_ms);
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1  correctness and stability", correctness_and_stability},
      {"AC2  optimal extremes", optimal_extremes},
      {"AC3  half ascending, half descending", half_and_half},
      {"AC4  run-count cap", run_count_cap},
      {"AC5  worked-sequence metric values", worked_sequence_metrics},
      {"AC6  worst-case comparison bound", worst_case_bound},
      {"AC7  runs adaptivity", runs_adaptivity},
      {"AC8  oracle equivalence", oracle_equivalence},
      {"AC9  merging-point equations", merging_point_equations},
      {"AC10 bowl shape over inversions", bowl_shape},
      {"AC11 adaptive speedup on sorted input", adaptive_speedup},
      {"AC12 melsort conformance", melsort_conformance},
      {"AC13 CSV round-trip and median", csv_and_median},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
