#include "neatsort/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "neatsort/baselines.hpp"
#include "neatsort/element.hpp"

namespace neatsort::metrics {

namespace {

using Ranks = std::vector<std::size_t>;

std::uint64_t count_inversions(Ranks& a, Ranks& tmp, std::size_t lo,
                               std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t total = count_inversions(a, tmp, lo, mid) +
                        count_inversions(a, tmp, mid, hi);
  std::size_t i = lo, j = mid, out = lo;
  while (i < mid && j < hi) {
    if (a[j] < a[i]) {
      total += mid - i;
      tmp[out++] = a[j++];
    } else {
      tmp[out++] = a[i++];
    }
  }
  while (i < mid) tmp[out++] = a[i++];
  while (j < hi) tmp[out++] = a[j++];
  std::copy(tmp.begin() + lo, tmp.begin() + hi, a.begin() + lo);
  return total;
}

// Indices of one longest strictly increasing subsequence of `v`.
std::vector<std::size_t> lis_indices(const Ranks& v) {
  std::vector<std::size_t> tails;  // indices into v
  std::vector<std::size_t> parent(v.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v[i],
                               [&](std::size_t idx, std::size_t val) { return v[idx] < val; });
    if (it != tails.begin()) parent[i] = *std::prev(it);
    if (it == tails.end()) {
      tails.push_back(i);
    } else {
      *it = i;
    }
  }
  std::vector<std::size_t> out;
  if (tails.empty()) return out;
  for (std::size_t i = tails.back(); i != std::numeric_limits<std::size_t>::max();
       i = parent[i]) {
    out.push_back(i);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::size_t lis_length(const Ranks& v) {
  std::vector<std::size_t> tails;
  for (std::size_t x : v) {
    auto it = std::lower_bound(tails.begin(), tails.end(), x);
    if (it == tails.end()) {
      tails.push_back(x);
    } else {
      *it = x;
    }
  }
  return tails.size();
}

Ranks mirrored(const Ranks& v) {
  Ranks out(v.size());
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = n - 1 - v[i];
  return out;
}

struct MonotoneSeq {
  std::size_t last;
  int dir;  // 0 while a singleton, +1 ascending, -1 descending
};

void sms_search(const Ranks& r, std::size_t pos, std::vector<MonotoneSeq>& open,
                std::size_t& best) {
  if (open.size() >= best) return;
  if (pos == r.size()) {
    best = open.size();
    return;
  }
  const std::size_t x = r[pos];
  // Indexed access: deeper calls push_back into `open`.
  for (std::size_t k = 0, m = open.size(); k < m; ++k) {
    const MonotoneSeq saved = open[k];
    if (saved.dir >= 0 && x > saved.last) {
      open[k] = {x, +1};
      sms_search(r, pos + 1, open, best);
      open[k] = saved;
    }
    if (saved.dir <= 0 && x < saved.last) {
      open[k] = {x, -1};
      sms_search(r, pos + 1, open, best);
      open[k] = saved;
    }
  }
  open.push_back({x, 0});
  sms_search(r, pos + 1, open, best);
  open.pop_back();
}

std::uint64_t sms_greedy(const Ranks& ranks) {
  Ranks rest = ranks;
  std::uint64_t count = 0;
  while (!rest.empty()) {
    // Compress to 0..m-1 so mirroring stays a permutation.
    const std::size_t m = rest.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rest[a] < rest[b]; });
    Ranks compact(m);
    for (std::size_t i = 0; i < m; ++i) compact[order[i]] = i;

    auto up = lis_indices(compact);
    auto down = lis_indices(mirrored(compact));
    const auto& take = up.size() >= down.size() ? up : down;
    std::vector<bool> drop(m, false);
    for (std::size_t i : take) drop[i] = true;
    Ranks next;
    next.reserve(m - take.size());
    for (std::size_t i = 0; i < m; ++i) {
      if (!drop[i]) next.push_back(compact[i]);
    }
    rest = std::move(next);
    ++count;
  }
  return count;
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Number of inserted values in [0, i).
  std::uint64_t prefix(std::size_t i) const {
    std::uint64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::uint64_t> tree_;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

}  // namespace

std::vector<std::size_t> stable_ranks(Keys x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<std::size_t> rank(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  return rank;
}

std::uint64_t inv(Keys x) {
  Ranks a = stable_ranks(x);
  Ranks tmp(a.size());
  return count_inversions(a, tmp, 0, a.size());
}

std::uint64_t dis(Keys x) {
  const Ranks r = stable_ranks(x);
  const std::size_t n = r.size();
  if (n < 2) return 0;
  // suffix_min is nondecreasing, so the farthest j with r[j] < r[i] is the
  // last index whose suffix minimum is still below r[i].
  Ranks suffix_min(n);
  suffix_min[n - 1] = r[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) suffix_min[i] = std::min(r[i], suffix_min[i + 1]);
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::lower_bound(suffix_min.begin(), suffix_min.end(), r[i]);
    const auto below = static_cast<std::size_t>(it - suffix_min.begin());
    if (below == 0) continue;
    const std::size_t j = below - 1;
    if (j > i) best = std::max<std::uint64_t>(best, j - i);
  }
  return best;
}

std::uint64_t max_disp(Keys x) {
  const Ranks r = stable_ranks(x);
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::uint64_t d = r[i] > i ? r[i] - i : i - r[i];
    best = std::max(best, d);
  }
  return best;
}

std::uint64_t exc(Keys x) {
  const Ranks r = stable_ranks(x);
  std::vector<bool> seen(r.size(), false);
  std::uint64_t cycles = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = r[j]) seen[j] = true;
  }
  return r.size() - cycles;
}

std::uint64_t rem(Keys x) {
  const Ranks r = stable_ranks(x);
  return r.size() - lis_length(r);
}

std::uint64_t runs(Keys x) {
  std::uint64_t steps = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] < x[i - 1]) ++steps;
  }
  return steps;
}

std::uint64_t sus(Keys x) {
  // Minimum ascending cover == longest strictly decreasing subsequence.
  return lis_length(mirrored(stable_ranks(x)));
}

std::uint64_t sms_exact(Keys x) {
  const Ranks r = stable_ranks(x);
  std::size_t best = r.size() + 1;
  if (r.empty()) return 0;
  std::vector<MonotoneSeq> open;
  sms_search(r, 0, open, best);
  return best;
}

CoverCount sms(Keys x) {
  if (x.size() <= kSmsExactLimit) return {sms_exact(x), true};
  // Any ascending cover is also a monotone cover.
  return {std::min(sms_greedy(stable_ranks(x)), sus(x)), false};
}

std::uint64_t enc(Keys x) {
  // Runs the same distribution as Melsort on the raw keys, so the count
  // always agrees with the list count Melsort builds.
  const auto elems = tag_keys(x);
  SortStats ignored;
  return baselines::distribute_encroaching(elems, ignored).size();
}

std::uint64_t osc(Keys x) {
  // Over a permutation, |r_j - r_{j+1}| - 1 elements lie strictly inside the
  // interval spanned by the adjacent pair (j, j+1).
  const Ranks r = stable_ranks(x);
  std::uint64_t total = 0;
  for (std::size_t j = 0; j + 1 < r.size(); ++j) {
    const std::size_t gap = r[j] > r[j + 1] ? r[j] - r[j + 1] : r[j + 1] - r[j];
    total += gap - 1;
  }
  return total;
}

RegResult reg(Keys x) {
  const Ranks r = stable_ranks(x);
  const std::size_t n = r.size();
  RegResult out;
  out.trace.distance.assign(n, 0);
  out.trace.history.assign(n, 0);
  out.trace.regional.assign(n, 1);
  if (n == 0) return out;

  Fenwick seen(n);
  std::set<std::size_t> inserted;         // ranks of earlier elements
  std::vector<std::size_t> position(n);   // rank -> index where it appeared
  seen.add(r[0]);
  inserted.insert(r[0]);
  position[r[0]] = 0;

  std::uint64_t product = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t lo = std::min(r[i - 1], r[i]);
    const std::size_t hi = std::max(r[i - 1], r[i]);
    const std::uint64_t between = seen.prefix(hi) - seen.prefix(lo + 1);
    const std::uint64_t distance = between + 1;

    // Earlier elements adjacent in value to x_i; the later of them fixes
    // how far back the history reaches.
    std::size_t latest = 0;
    auto succ = inserted.upper_bound(r[i]);
    if (succ != inserted.end()) latest = std::max(latest, position[*succ]);
    if (succ != inserted.begin()) latest = std::max(latest, position[*std::prev(succ)]);
    const std::uint64_t history = (i - latest) - 1;

    const std::uint64_t one_based = i + 1;
    const std::uint64_t regional = std::min(history + distance, one_based - history);

    out.trace.distance[i] = distance;
    out.trace.history[i] = history;
    out.trace.regional[i] = regional;
    out.log_reg += std::log2(static_cast<double>(std::max<std::uint64_t>(regional, 1) + 1));
    product = saturating_mul(product, regional - 1);

    seen.add(r[i]);
    inserted.insert(r[i]);
    position[r[i]] = i;
  }
  out.reg_product = n >= 2 ? product : 0;
  return out;
}

MetricReport metric_report(Keys x) {
  MetricReport m;
  m.inv = inv(x);
  m.dis = dis(x);
  m.max_disp = max_disp(x);
  m.exc = exc(x);
  m.rem = rem(x);
  m.runs = runs(x);
  m.sus = sus(x);
  const CoverCount cover = sms(x);
  m.sms = cover.value;
  m.sms_exact = cover.exact;
  m.enc = enc(x);
  m.osc = osc(x);
  const RegResult rg = reg(x);
  m.log_reg = rg.log_reg;
  m.reg_product = rg.reg_product;
  return m;
}

std::string format_report(const MetricReport& m) {
  std::ostringstream os;
  os << "inv=" << m.inv << '\n'
     << "dis=" << m.dis << '\n'
     << "max=" << m.max_disp << '\n'
     << "exc=" << m.exc << '\n'
     << "rem=" << m.rem << '\n'
     << "runs=" << m.runs << '\n'
     << "sus=" << m.sus << '\n'
     << "sms=" << m.sms << '\n'
     << "sms_exact=" << (m.sms_exact ? "true" : "false") << '\n'
     << "enc=" << m.enc << '\n'
     << "osc=" << m.osc << '\n'
     << "log_reg=" << m.log_reg << '\n'
     << "reg=" << m.reg_product << '\n';
  return os.str();
}

}  // namespace neatsort::metrics
