#include "neatsort/core_sort.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

namespace neatsort::core {

namespace {

inline bool counted_less(const Element& a, const Element& b, SortStats& stats) {
  ++stats.comparisons;
  return a.key < b.key;
}

void reverse_counted(std::span<Element> buffer, std::size_t start,
                     std::size_t end, SortStats& stats) {
  std::size_t lo = start;
  std::size_t hi = end;
  while (hi - lo > 1) {
    --hi;
    std::swap(buffer[lo], buffer[hi]);
    stats.moves += 3;
    ++lo;
  }
}

}  // namespace

MergePolicy MergePolicy::make(MergeMode mode, double p) {
  if (!(p >= 1.0 && p <= 2.0)) {
    throw std::invalid_argument("merge factor p must lie in [1.0, 2.0], got " +
                                std::to_string(p));
  }
  return MergePolicy{mode, p};
}

MergeMode parse_merge_mode(std::string_view name) {
  if (name == "adjacent-pairs") return MergeMode::AdjacentPairs;
  if (name == "leftmost") return MergeMode::LeftmostAlways;
  if (name == "leave-out-longest") return MergeMode::LeaveOutLongest;
  if (name == "triple-p") return MergeMode::TripleP;
  throw std::invalid_argument("unknown merge mode '" + std::string(name) + "'");
}

std::string_view to_string(MergeMode mode) {
  switch (mode) {
    case MergeMode::AdjacentPairs: return "adjacent-pairs";
    case MergeMode::LeftmostAlways: return "leftmost";
    case MergeMode::LeaveOutLongest: return "leave-out-longest";
    case MergeMode::TripleP: return "triple-p";
  }
  return "?";
}

RunPartition detect_runs(std::span<Element> buffer, SortStats& stats) {
  RunPartition runs;
  const std::size_t n = buffer.size();
  std::size_t cursor = 0;
  while (cursor < n) {
    const std::size_t start = cursor;
    std::size_t end = start + 1;
    while (end < n && !counted_less(buffer[end], buffer[end - 1], stats)) ++end;

    if (end - start == 1 && end < n) {
      // buffer[start] > buffer[start + 1] is already known from the scan above.
      ++end;
      while (end < n && counted_less(buffer[end], buffer[end - 1], stats)) ++end;
      reverse_counted(buffer, start, end, stats);
      while (end < n && !counted_less(buffer[end], buffer[end - 1], stats)) ++end;
    }

    // Every run stops at a strict step-down, and a reversed run starts with
    // the smallest element of its descent, so consecutive runs never fuse.
    assert(runs.empty() || buffer[start].key < buffer[runs.back().end - 1].key);
    runs.push_back({start, end});
    cursor = end;
  }
  stats.runs_detected = runs.size();
  return runs;
}

std::size_t binary_search_first_greater(std::span<const Element> seq,
                                        std::size_t lo, std::size_t hi,
                                        const Element& pivot,
                                        SortStats& stats) {
  if (lo > hi || hi > seq.size()) {
    throw std::invalid_argument("binary_search_first_greater: bad range [" +
                                std::to_string(lo) + ", " + std::to_string(hi) +
                                ")");
  }
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (counted_less(pivot, seq[mid], stats)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::size_t binary_search_first_greater(std::span<const Element> seq,
                                        std::size_t lo, std::size_t hi,
                                        const Element& pivot) {
  SortStats ignored;
  return binary_search_first_greater(seq, lo, hi, pivot, ignored);
}

MergingPoints compute_merging_points(std::span<const Element> left,
                                     std::span<const Element> right) {
  if (left.empty() || right.empty() || !(right.front().key < left.back().key)) {
    throw std::invalid_argument(
        "compute_merging_points: requires right.front() < left.back()");
  }
  const std::size_t nl = left.size();
  const std::size_t nr = right.size();

  MergingPoints points;
  std::size_t j = binary_search_first_greater(left, 0, nl - 1, right.front());
  std::size_t k = 0;
  for (;;) {
    points.left.push_back(j);
    points.right.push_back(k);

    // Right block: everything strictly below left[j] (left[nl] is +inf).
    std::size_t next_k = nr;
    if (j < nl) {
      next_k = k + 1;
      while (next_k < nr && right[next_k].key < left[j].key) ++next_k;
    }
    if (next_k == nr) {
      points.left.push_back(nl);
      points.right.push_back(nr);
      break;
    }
    // Left block: everything <= right[next_k].
    std::size_t next_j = j + 1;
    while (next_j < nl && !(right[next_k].key < left[next_j].key)) ++next_j;
    j = next_j;
    k = next_k;
  }
  return points;
}

std::vector<Element> interleave(std::span<const Element> left,
                                std::span<const Element> right,
                                const MergingPoints& points) {
  std::vector<Element> out;
  out.reserve(left.size() + right.size());
  if (points.left.empty()) return out;
  out.insert(out.end(), left.begin(), left.begin() + points.left.front());
  for (std::size_t i = 0; i + 1 < points.left.size(); ++i) {
    out.insert(out.end(), right.begin() + points.right[i],
               right.begin() + points.right[i + 1]);
    out.insert(out.end(), left.begin() + points.left[i],
               left.begin() + points.left[i + 1]);
  }
  return out;
}

void merge_adjacent(std::span<Element> buffer, std::size_t mid,
                    std::vector<Element>& scratch, SortStats& stats,
                    bool ordered_pair) {
  const std::size_t n = buffer.size();
  if (mid == 0 || mid >= n) return;
  if (!ordered_pair && !counted_less(buffer[mid], buffer[mid - 1], stats)) {
    return;
  }

  // buffer[mid-1] > buffer[mid], so the insertion point of the first right
  // element lies strictly before the last left element.
  const std::size_t split = binary_search_first_greater(
      std::span<const Element>(buffer.data(), mid), 0, mid - 1, buffer[mid],
      stats);

  const std::size_t tail_len = mid - split;
  if (scratch.size() < tail_len) scratch.resize(tail_len);
  std::copy(buffer.begin() + split, buffer.begin() + mid, scratch.begin());
  stats.moves += tail_len;
  stats.note_aux(scratch.size());

  std::size_t out = split;
  std::size_t t = 0;
  std::size_t r = mid;
  // right[0] belongs before every element of the copied suffix.
  buffer[out++] = buffer[r++];
  ++stats.moves;
  while (t < tail_len && r < n) {
    if (counted_less(buffer[r], scratch[t], stats)) {
      buffer[out++] = buffer[r++];
    } else {
      buffer[out++] = scratch[t++];
    }
    ++stats.moves;
  }
  while (t < tail_len) {
    buffer[out++] = scratch[t++];
    ++stats.moves;
  }
  // Any right elements left over are already in their final slots.
}

std::vector<Element> neat_merge(std::span<const Element> left,
                                std::span<const Element> right,
                                SortStats& stats) {
  std::vector<Element> out;
  out.reserve(left.size() + right.size());
  out.insert(out.end(), left.begin(), left.end());
  out.insert(out.end(), right.begin(), right.end());
  std::vector<Element> scratch;
  merge_adjacent(out, left.size(), scratch, stats);
  return out;
}

std::vector<PassStep> schedule_pass(std::span<const std::size_t> lengths,
                                    const MergePolicy& policy) {
  const std::size_t m = lengths.size();
  std::vector<PassStep> steps;
  steps.reserve(m);

  auto pair_up = [&](std::size_t from, std::size_t to) {
    std::size_t j = from;
    for (; j + 1 < to; j += 2) steps.push_back({j, true});
    if (j < to) steps.push_back({j, false});
  };

  switch (policy.mode) {
    case MergeMode::AdjacentPairs:
      pair_up(0, m);
      break;

    case MergeMode::LeftmostAlways:
      if (m >= 2) {
        steps.push_back({0, true});
        for (std::size_t j = 2; j < m; ++j) steps.push_back({j, false});
      } else if (m == 1) {
        steps.push_back({0, false});
      }
      break;

    case MergeMode::LeaveOutLongest: {
      if (m % 2 == 0) {
        pair_up(0, m);
        break;
      }
      // Only an even index leaves an even number of runs on both sides.
      std::size_t keep = 0;
      for (std::size_t j = 2; j < m; j += 2) {
        if (lengths[j] > lengths[keep]) keep = j;
      }
      pair_up(0, keep);
      steps.push_back({keep, false});
      pair_up(keep + 1, m);
      break;
    }

    case MergeMode::TripleP: {
      std::size_t j = 0;
      while (j < m) {
        if (j + 1 >= m) {
          steps.push_back({j, false});
          ++j;
        } else if (j + 2 >= m) {
          steps.push_back({j, true});
          j += 2;
        } else if (static_cast<double>(lengths[j]) <=
                   policy.p * static_cast<double>(lengths[j + 1] + lengths[j + 2])) {
          steps.push_back({j, true});
          j += 2;
        } else {
          steps.push_back({j, false});
          steps.push_back({j + 1, true});
          j += 3;
        }
      }
      break;
    }
  }
  return steps;
}

RunPartition apply_pass(std::span<Element> buffer, const RunPartition& runs,
                        std::span<const PassStep> steps,
                        std::vector<Element>& scratch, SortStats& stats) {
  RunPartition next;
  next.reserve(steps.size());
  for (const PassStep& step : steps) {
    const Run& a = runs[step.first];
    if (!step.merge) {
      next.push_back(a);
      continue;
    }
    const Run& b = runs[step.first + 1];
    merge_adjacent(buffer.subspan(a.start, b.end - a.start), a.size(), scratch,
                   stats, /*ordered_pair=*/true);
    next.push_back({a.start, b.end});
  }
  return next;
}

SortStats neat_sort(std::span<Element> buffer, const MergePolicy& policy) {
  SortStats stats;
  RunPartition runs = detect_runs(buffer, stats);
  std::vector<Element> scratch;
  std::vector<std::size_t> lengths;
  while (runs.size() > 1) {
    lengths.clear();
    for (const Run& r : runs) lengths.push_back(r.size());
    const auto steps = schedule_pass(lengths, policy);
    runs = apply_pass(buffer, runs, steps, scratch, stats);
    ++stats.merge_passes;
  }
  return stats;
}

}  // namespace neatsort::core
