#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "neatsort/element.hpp"

namespace neatsort::gen {

enum class Family {
  Sorted,
  Reversed,
  RandomPerm,
  InversionPct,
  RunsPct,
  MaxDistPct,
  HalfAscHalfDesc,
};

Family parse_family(std::string_view name);
std::string_view to_string(Family family);
bool uses_target(Family family);

struct GeneratorSpec {
  Family family = Family::RandomPerm;
  std::size_t n = 0;
  std::optional<double> target_pct;  // required by the *Pct families
  std::uint64_t seed = 0;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Raised for specs that cannot be met within two percentage points, or that
/// miss a required field.
class InfeasibleSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A permutation of 1..n, tagged with positions. Deterministic for a fixed
/// spec.
std::vector<Element> generate(const GeneratorSpec& spec);

struct Achieved {
  double inv_pct = 0.0;      // inversions / (n(n-1)/2)
  double runs_pct = 0.0;     // step-downs / (n-1)
  double maxdist_pct = 0.0;  // max displacement / n
};

Achieved measure(const std::vector<std::int64_t>& keys);

/// Achieved disorder percentages of a generated sequence. The spec is only
/// carried for the caller's logging; the numbers come from the data.
Achieved verify(const GeneratorSpec& spec, const std::vector<Element>& x);

std::string to_json(const GeneratorSpec& spec);
/// Accepts exactly the GeneratorSpec fields; unknown keys are rejected.
GeneratorSpec spec_from_json(std::string_view text);

/// SplitMix64 finaliser, used to derive independent streams from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace neatsort::gen
