#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "neatsort/element.hpp"

namespace neatsort::baselines {

/// Top-down stable mergesort with one n-sized buffer. Not adaptive: sorted
/// input still pays for every merge.
SortStats merge_sort(std::span<Element> buffer);

/// Quicksort with a pivot drawn uniformly from the current range by a
/// generator seeded with `seed`. Same seed and input give the same counts.
SortStats quicksort_random(std::span<Element> buffer, std::uint64_t seed);

/// Median-of-three quicksort, heapsort below a depth budget of
/// 2*floor(log2 n), insertion sort for ranges shorter than 16.
SortStats introsort_hybrid(std::span<Element> buffer);

/// Encroaching lists: each list is a double-ended sorted run that only grows
/// at its ends.
using EncroachingList = std::deque<Element>;

/// Distribution phase of Melsort. Each element goes to the first list whose
/// head it is strictly below, or failing that whose tail it is strictly
/// above; otherwise it opens a new list.
std::vector<EncroachingList> distribute_encroaching(std::span<const Element> input,
                                                    SortStats& stats);

/// Melsort: distribution, then repeated halving merges (an odd last list is
/// folded into its predecessor first). Not stable.
SortStats melsort(std::span<Element> buffer);

}  // namespace neatsort::baselines
