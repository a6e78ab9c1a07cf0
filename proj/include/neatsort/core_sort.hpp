#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neatsort/element.hpp"

namespace neatsort::core {

/// Half-open index range [start, end) of a nondecreasing run in the working
/// buffer.
struct Run {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  friend bool operator==(const Run&, const Run&) = default;
};

/// Runs in buffer order. They are contiguous, disjoint and cover the buffer,
/// and the head of every run is strictly smaller than the tail of the run
/// before it.
using RunPartition = std::vector<Run>;

enum class MergeMode {
  AdjacentPairs,    // (0,1), (2,3), ...; an odd last run waits
  LeftmostAlways,   // only runs 0 and 1 merge in each pass
  LeaveOutLongest,  // adjacent pairs; on odd counts the longest run waits
  TripleP,          // size-balancing triple rule with factor p
};

struct MergePolicy {
  MergeMode mode = MergeMode::TripleP;
  double p = 1.3;

  /// Throws std::invalid_argument unless p is in [1.0, 2.0].
  static MergePolicy make(MergeMode mode, double p = 1.3);
};

MergeMode parse_merge_mode(std::string_view name);
std::string_view to_string(MergeMode mode);

/// Index sequences splitting a stable merge of L and R into alternating
/// slices: L[0, j0), R[k0, k1), L[j0, j1), R[k1, k2), ..., L[j(t-1), jt).
/// Both vectors have t + 1 entries; jt == |L| and kt == |R|.
struct MergingPoints {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

/// Scans the buffer once and splits it into nondecreasing runs.
///
/// A run that would be a singleton is instead grown over the strictly
/// descending stretch that follows it, reversed in place, and then extended
/// forward while the next element is >= its new tail. Reversal swaps are
/// charged three moves each. Every run except possibly the last holds at
/// least two elements, so there are at most ceil(n/2) runs.
RunPartition detect_runs(std::span<Element> buffer, SortStats& stats);

/// Smallest i in [lo, hi] with seq[i].key > pivot.key (hi when none).
/// Requires seq[lo, hi) nondecreasing; throws std::invalid_argument when
/// lo > hi or hi > seq.size().
std::size_t binary_search_first_greater(std::span<const Element> seq,
                                        std::size_t lo, std::size_t hi,
                                        const Element& pivot,
                                        SortStats& stats);
std::size_t binary_search_first_greater(std::span<const Element> seq,
                                        std::size_t lo, std::size_t hi,
                                        const Element& pivot);

/// Requires both runs nondecreasing and right.front() < left.back();
/// throws std::invalid_argument otherwise.
MergingPoints compute_merging_points(std::span<const Element> left,
                                     std::span<const Element> right);

/// Concatenates the slices described by `points`.
std::vector<Element> interleave(std::span<const Element> left,
                                std::span<const Element> right,
                                const MergingPoints& points);

/// Stable merge of two adjacent runs buffer[0, mid) and buffer[mid, size).
///
/// The output reuses the left run's storage. Only the left suffix starting
/// at the insertion point of the first right element is copied to `scratch`,
/// and right elements that are already in place are not moved. When
/// `ordered_pair` is true the caller guarantees buffer[mid] < buffer[mid-1]
/// and the pre-check comparison is skipped.
void merge_adjacent(std::span<Element> buffer, std::size_t mid,
                    std::vector<Element>& scratch, SortStats& stats,
                    bool ordered_pair = false);

/// Stable merge of two nondecreasing sequences; on equal keys the left
/// element comes first. Accepts already-ordered pairs (right.front() >=
/// left.back()) at the cost of one comparison.
std::vector<Element> neat_merge(std::span<const Element> left,
                                std::span<const Element> right,
                                SortStats& stats);

/// One entry of a merge pass. When `merge` is set, runs `first` and
/// `first + 1` are merged; otherwise run `first` is carried over unchanged.
struct PassStep {
  std::size_t first = 0;
  bool merge = false;

  friend bool operator==(const PassStep&, const PassStep&) = default;
};

/// Plans one merge pass over runs with the given lengths. Every run appears
/// in exactly one step and merges only pair adjacent runs.
std::vector<PassStep> schedule_pass(std::span<const std::size_t> lengths,
                                    const MergePolicy& policy);

/// Executes a planned pass and returns the surviving partition.
RunPartition apply_pass(std::span<Element> buffer, const RunPartition& runs,
                        std::span<const PassStep> steps,
                        std::vector<Element>& scratch, SortStats& stats);

/// Stable sort: run detection followed by scheduled passes of adjacent run
/// merges until a single run remains.
SortStats neat_sort(std::span<Element> buffer, const MergePolicy& policy = {});

}  // namespace neatsort::core
