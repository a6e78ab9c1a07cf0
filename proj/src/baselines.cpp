#include "neatsort/baselines.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <utility>

#include "neatsort/core_sort.hpp"

namespace neatsort::baselines {

namespace {

inline bool counted_less(const Element& a, const Element& b, SortStats& stats) {
  ++stats.comparisons;
  return a.key < b.key;
}

inline void counted_swap(Element& a, Element& b, SortStats& stats) {
  std::swap(a, b);
  stats.moves += 3;
}

// ---------------------------------------------------------------------------
// mergesort

void merge_sort_rec(std::span<Element> a, std::span<Element> tmp,
                    SortStats& stats) {
  const std::size_t n = a.size();
  if (n < 2) return;
  const std::size_t mid = n / 2;
  merge_sort_rec(a.first(mid), tmp.first(mid), stats);
  merge_sort_rec(a.subspan(mid), tmp.subspan(mid), stats);

  std::copy(a.begin(), a.end(), tmp.begin());
  stats.moves += n;
  std::size_t i = 0, j = mid, out = 0;
  while (i < mid && j < n) {
    if (counted_less(tmp[j], tmp[i], stats)) {
      a[out++] = tmp[j++];
    } else {
      a[out++] = tmp[i++];
    }
    ++stats.moves;
  }
  while (i < mid) {
    a[out++] = tmp[i++];
    ++stats.moves;
  }
  while (j < n) {
    a[out++] = tmp[j++];
    ++stats.moves;
  }
}

// ---------------------------------------------------------------------------
// quicksort helpers

void insertion_sort(std::span<Element> a, SortStats& stats) {
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (!counted_less(a[i], a[i - 1], stats)) continue;
    Element v = a[i];
    ++stats.moves;
    std::size_t j = i;
    do {
      a[j] = a[j - 1];
      ++stats.moves;
      --j;
    } while (j > 0 && counted_less(v, a[j - 1], stats));
    a[j] = v;
    ++stats.moves;
  }
}

// Hoare partition around the value at pivot_index. Returns p such that every
// element of [0, p] is <= pivot and every element of [p+1, n) is >= pivot,
// with both sides nonempty.
std::size_t hoare_partition(std::span<Element> a, std::size_t pivot_index,
                            SortStats& stats) {
  counted_swap(a[0], a[pivot_index], stats);
  const Element pivot = a[0];
  std::size_t i = 0;
  std::size_t j = a.size();
  for (;;) {
    do { --j; } while (counted_less(pivot, a[j], stats));
    while (i < j && counted_less(a[i + 1], pivot, stats)) ++i;
    ++i;
    if (i >= j) {
      // j is the last slot of the left side; it is <= pivot.
      counted_swap(a[0], a[j], stats);
      return j;
    }
    counted_swap(a[i], a[j], stats);
  }
}

void quicksort_rec(std::span<Element> a, std::mt19937_64& rng, SortStats& stats) {
  while (a.size() > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
    const std::size_t p = hoare_partition(a, pick(rng), stats);
    // a[p] holds the pivot in its final slot.
    auto left = a.first(p);
    auto right = a.subspan(p + 1);
    if (left.size() < right.size()) {
      quicksort_rec(left, rng, stats);
      a = right;
    } else {
      quicksort_rec(right, rng, stats);
      a = left;
    }
  }
}

void sift_down(std::span<Element> a, std::size_t root, std::size_t n,
               SortStats& stats) {
  Element v = a[root];
  ++stats.moves;
  for (;;) {
    std::size_t child = 2 * root + 1;
    if (child >= n) break;
    if (child + 1 < n && counted_less(a[child], a[child + 1], stats)) ++child;
    if (!counted_less(v, a[child], stats)) break;
    a[root] = a[child];
    ++stats.moves;
    root = child;
  }
  a[root] = v;
  ++stats.moves;
}

void heap_sort(std::span<Element> a, SortStats& stats) {
  const std::size_t n = a.size();
  if (n < 2) return;
  for (std::size_t i = n / 2; i-- > 0;) sift_down(a, i, n, stats);
  for (std::size_t end = n - 1; end > 0; --end) {
    counted_swap(a[0], a[end], stats);
    sift_down(a, 0, end, stats);
  }
}

constexpr std::size_t kInsertionThreshold = 16;

std::size_t median_of_three(std::span<Element> a, SortStats& stats) {
  const std::size_t x = 0, y = a.size() / 2, z = a.size() - 1;
  if (counted_less(a[y], a[x], stats)) {
    if (counted_less(a[z], a[y], stats)) return y;
    return counted_less(a[z], a[x], stats) ? z : x;
  }
  if (counted_less(a[z], a[y], stats)) {
    return counted_less(a[z], a[x], stats) ? x : z;
  }
  return y;
}

void introsort_rec(std::span<Element> a, int depth_budget, SortStats& stats) {
  while (a.size() >= kInsertionThreshold) {
    if (depth_budget-- == 0) {
      heap_sort(a, stats);
      return;
    }
    const std::size_t p = hoare_partition(a, median_of_three(a, stats), stats);
    auto left = a.first(p);
    auto right = a.subspan(p + 1);
    if (left.size() < right.size()) {
      introsort_rec(left, depth_budget, stats);
      a = right;
    } else {
      introsort_rec(right, depth_budget, stats);
      a = left;
    }
  }
  insertion_sort(a, stats);
}

}  // namespace

SortStats merge_sort(std::span<Element> buffer) {
  SortStats stats;
  std::vector<Element> tmp(buffer.size());
  stats.note_aux(tmp.size());
  merge_sort_rec(buffer, tmp, stats);
  return stats;
}

SortStats quicksort_random(std::span<Element> buffer, std::uint64_t seed) {
  SortStats stats;
  std::mt19937_64 rng(seed);
  quicksort_rec(buffer, rng, stats);
  return stats;
}

SortStats introsort_hybrid(std::span<Element> buffer) {
  SortStats stats;
  const std::size_t n = buffer.size();
  if (n < 2) return stats;
  const int depth = 2 * (static_cast<int>(std::bit_width(n)) - 1);
  introsort_rec(buffer, depth, stats);
  return stats;
}

std::vector<EncroachingList> distribute_encroaching(std::span<const Element> input,
                                                    SortStats& stats) {
  std::vector<EncroachingList> lists;
  for (const Element& x : input) {
    // List intervals are nested (head_1 <= head_2 <= ..., tail_1 >= tail_2 >= ...),
    // so "x fits list j" is false up to some j and true afterwards.
    std::size_t lo = 0;
    std::size_t hi = lists.size();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const bool fits = counted_less(x, lists[mid].front(), stats) ||
                        counted_less(lists[mid].back(), x, stats);
      if (fits) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (lo == lists.size()) {
      lists.emplace_back().push_back(x);
    } else if (counted_less(x, lists[lo].front(), stats)) {
      lists[lo].push_front(x);
    } else {
      lists[lo].push_back(x);
    }
    ++stats.moves;
  }
  return lists;
}

SortStats melsort(std::span<Element> buffer) {
  SortStats stats;
  if (buffer.empty()) return stats;
  auto lists = distribute_encroaching(buffer, stats);
  stats.runs_detected = lists.size();

  std::vector<std::vector<Element>> sorted;
  sorted.reserve(lists.size());
  for (auto& l : lists) sorted.emplace_back(l.begin(), l.end());
  lists.clear();

  std::size_t count = sorted.size();
  while (count > 1) {
    if (count % 2 == 1) {
      sorted[count - 2] = core::neat_merge(sorted[count - 2], sorted[count - 1], stats);
      --count;
    }
    const std::size_t half = count / 2;
    for (std::size_t i = 0; i < half; ++i) {
      sorted[i] = core::neat_merge(sorted[i], sorted[half + i], stats);
    }
    count = half;
    ++stats.merge_passes;
  }
  std::copy(sorted.front().begin(), sorted.front().end(), buffer.begin());
  stats.moves += buffer.size();
  return stats;
}

}  // namespace neatsort::baselines
