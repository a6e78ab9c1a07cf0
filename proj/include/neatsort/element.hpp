#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace neatsort {

/// A sortable record. Only `key` takes part in comparisons; `tag` is carried
/// along untouched (it usually holds the original index, which is what the
/// stability checks look at).
struct Element {
  std::int64_t key = 0;
  std::uint64_t tag = 0;

  friend bool operator==(const Element&, const Element&) = default;
};

/// Instrumentation shared by every sorting routine in the library.
///
/// `moves` counts element assignments. An in-place swap is three assignments.
/// `aux_peak` is the largest number of auxiliary element slots in use at once.
struct SortStats {
  std::uint64_t comparisons = 0;
  std::uint64_t moves = 0;
  std::uint64_t runs_detected = 0;
  std::uint64_t merge_passes = 0;
  std::uint64_t aux_peak = 0;

  void note_aux(std::uint64_t slots) {
    if (slots > aux_peak) aux_peak = slots;
  }
};

/// Builds elements from raw keys, tagging each with its position.
inline std::vector<Element> tag_keys(std::span<const std::int64_t> keys) {
  std::vector<Element> out;
  out.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out.push_back({keys[i], static_cast<std::uint64_t>(i)});
  }
  return out;
}

inline std::vector<std::int64_t> keys_of(std::span<const Element> elems) {
  std::vector<std::int64_t> out;
  out.reserve(elems.size());
  for (const auto& e : elems) out.push_back(e.key);
  return out;
}

inline bool is_sorted_by_key(std::span<const Element> elems) {
  for (std::size_t i = 1; i < elems.size(); ++i) {
    if (elems[i].key < elems[i - 1].key) return false;
  }
  return true;
}

}  // namespace neatsort
