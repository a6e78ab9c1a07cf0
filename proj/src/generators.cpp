#include "neatsort/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <json.hpp>

#include "neatsort/metrics.hpp"

namespace neatsort::gen {

namespace {

constexpr double kTolerancePct = 2.0;

std::vector<Element> from_values(const std::vector<std::int64_t>& values) {
  return tag_keys(values);
}

double require_target(const GeneratorSpec& spec) {
  if (!spec.target_pct) {
    throw InfeasibleSpec(std::string(to_string(spec.family)) +
                         ": target_pct is required");
  }
  const double pct = *spec.target_pct;
  if (!(pct >= 0.0 && pct <= 100.0)) {
    throw InfeasibleSpec(std::string(to_string(spec.family)) +
                         ": target_pct must lie in [0, 100]");
  }
  return pct;
}

// Picks the count closest to pct% of `denominator` and checks it lands
// within tolerance.
std::uint64_t feasible_count(const GeneratorSpec& spec, double pct,
                             std::uint64_t denominator, const char* what) {
  if (denominator == 0) {
    if (pct > kTolerancePct) {
      throw InfeasibleSpec(std::string(to_string(spec.family)) + ": " + what +
                           " is always 0% for n=" + std::to_string(spec.n) +
                           ", target " + std::to_string(pct) + "% unreachable");
    }
    return 0;
  }
  const auto count = static_cast<std::uint64_t>(
      std::llround(pct / 100.0 * static_cast<double>(denominator)));
  const double achieved =
      100.0 * static_cast<double>(count) / static_cast<double>(denominator);
  if (std::abs(achieved - pct) > kTolerancePct) {
    throw InfeasibleSpec(std::string(to_string(spec.family)) + ": " + what + " " +
                         std::to_string(pct) + "% unreachable for n=" +
                         std::to_string(spec.n) + " (nearest is " +
                         std::to_string(achieved) + "%)");
  }
  return count;
}

// Order-statistic tree over values 1..n.
class RemainingValues {
 public:
  explicit RemainingValues(std::size_t n) : tree_(n + 1, 0) {
    for (std::size_t i = 1; i <= n; ++i) {
      tree_[i] += 1;
      const std::size_t parent = i + (i & (~i + 1));
      if (parent <= n) tree_[parent] += tree_[i];
    }
    top_ = std::bit_floor(n == 0 ? std::size_t{1} : n);
  }

  // Removes and returns the k-th smallest remaining value (k is 0-based).
  std::size_t take(std::uint64_t k) {
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= k) {
        pos = next;
        k -= tree_[next];
      }
    }
    const std::size_t value = pos + 1;
    for (std::size_t i = value; i < tree_.size(); i += i & (~i + 1)) --tree_[i];
    return value;
  }

 private:
  std::vector<std::uint64_t> tree_;
  std::size_t top_;
};

std::vector<std::int64_t> inversion_controlled(std::size_t n, std::uint64_t target,
                                               std::mt19937_64& rng) {
  const std::uint64_t max_inv =
      n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  // Lehmer code: code[i] = number of later elements smaller than element i,
  // bounded by n-1-i. Its sum is the inversion count.
  std::vector<std::uint64_t> code(n, 0);
  if (target > 0 && target < max_inv) {
    const double q = static_cast<double>(target) / static_cast<double>(max_inv);
    std::int64_t residual = static_cast<std::int64_t>(target);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t cap = n - 1 - i;
      if (cap == 0) continue;
      std::binomial_distribution<std::uint64_t> draw(cap, q);
      code[i] = draw(rng);
      residual -= static_cast<std::int64_t>(code[i]);
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uint64_t attempts = 64 * static_cast<std::uint64_t>(n);
    while (residual != 0 && attempts-- > 0) {
      const std::size_t i = pick(rng);
      const std::uint64_t cap = n - 1 - i;
      if (residual > 0 && code[i] < cap) {
        ++code[i];
        --residual;
      } else if (residual < 0 && code[i] > 0) {
        --code[i];
        ++residual;
      }
    }
    for (std::size_t i = 0; residual != 0 && i < n; ++i) {
      const std::uint64_t cap = n - 1 - i;
      if (residual > 0) {
        const auto add = std::min<std::uint64_t>(cap - code[i],
                                                 static_cast<std::uint64_t>(residual));
        code[i] += add;
        residual -= static_cast<std::int64_t>(add);
      } else {
        const auto sub = std::min<std::uint64_t>(code[i],
                                                 static_cast<std::uint64_t>(-residual));
        code[i] -= sub;
        residual += static_cast<std::int64_t>(sub);
      }
    }
  } else if (target >= max_inv) {
    for (std::size_t i = 0; i < n; ++i) code[i] = n - 1 - i;
  }

  RemainingValues values(n);
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::int64_t>(values.take(code[i]));
  }
  return out;
}

std::vector<std::int64_t> runs_controlled(std::size_t n, std::uint64_t step_downs,
                                          std::mt19937_64& rng) {
  std::vector<std::int64_t> out(n);
  if (n == 0) return out;
  // Boundary b sits between positions b and b+1.
  std::vector<std::size_t> boundaries(n - 1);
  std::iota(boundaries.begin(), boundaries.end(), 0);
  for (std::uint64_t i = 0; i < step_downs; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, boundaries.size() - 1);
    std::swap(boundaries[i], boundaries[pick(rng)]);
  }
  boundaries.resize(step_downs);
  std::sort(boundaries.begin(), boundaries.end());

  // Ascending blocks of decreasing value ranges: the first block takes the
  // largest values, so each chosen boundary is a descent and no other is.
  std::size_t start = 0;
  std::int64_t top = static_cast<std::int64_t>(n);
  auto fill = [&](std::size_t end) {
    const auto len = static_cast<std::int64_t>(end - start);
    std::int64_t v = top - len + 1;
    for (std::size_t i = start; i < end; ++i) out[i] = v++;
    top -= len;
    start = end;
  };
  for (std::size_t b : boundaries) fill(b + 1);
  fill(n);
  return out;
}

std::vector<std::int64_t> displacement_controlled(std::size_t n, std::size_t d,
                                                  std::mt19937_64& rng) {
  std::vector<std::int64_t> out(n);
  if (n == 0) return out;
  // Sort positions by i*S + r_i with r_i in [0, (d+1)S). An element overtakes
  // a later one only if it is at most d slots ahead, so no element moves more
  // than d. One pinned element is pushed exactly d slots forward.
  constexpr std::uint64_t kScale = 1u << 16;
  const std::uint64_t span = (static_cast<std::uint64_t>(d) + 1) * kScale;
  std::vector<std::uint64_t> score(n);
  std::uniform_int_distribution<std::uint64_t> jitter(0, span - 1);
  for (std::size_t i = 0; i < n; ++i) score[i] = i * kScale + jitter(rng);
  if (d > 0) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1 - d);
    const std::size_t p = pick(rng);
    score[p] = p * kScale + span - 1;
    for (std::size_t k = 1; k <= d; ++k) score[p + k] = (p + k) * kScale;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<std::int64_t>(order[k] + 1);
  return out;
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "sorted") return Family::Sorted;
  if (name == "reversed") return Family::Reversed;
  if (name == "random") return Family::RandomPerm;
  if (name == "inversion-pct") return Family::InversionPct;
  if (name == "runs-pct") return Family::RunsPct;
  if (name == "maxdist-pct") return Family::MaxDistPct;
  if (name == "half-asc-desc") return Family::HalfAscHalfDesc;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Sorted: return "sorted";
    case Family::Reversed: return "reversed";
    case Family::RandomPerm: return "random";
    case Family::InversionPct: return "inversion-pct";
    case Family::RunsPct: return "runs-pct";
    case Family::MaxDistPct: return "maxdist-pct";
    case Family::HalfAscHalfDesc: return "half-asc-desc";
  }
  return "?";
}

bool uses_target(Family family) {
  return family == Family::InversionPct || family == Family::RunsPct ||
         family == Family::MaxDistPct;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<Element> generate(const GeneratorSpec& spec) {
  const std::size_t n = spec.n;
  std::mt19937_64 rng(mix_seed(spec.seed, static_cast<std::uint64_t>(spec.family)));
  std::vector<std::int64_t> values(n);

  switch (spec.family) {
    case Family::Sorted:
      std::iota(values.begin(), values.end(), 1);
      break;
    case Family::Reversed:
      for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<std::int64_t>(n - i);
      break;
    case Family::RandomPerm:
      std::iota(values.begin(), values.end(), 1);
      for (std::size_t i = n; i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(values[i - 1], values[pick(rng)]);
      }
      break;
    case Family::HalfAscHalfDesc: {
      const std::size_t half = n / 2;
      for (std::size_t i = 0; i < half; ++i) values[i] = static_cast<std::int64_t>(i + 1);
      for (std::size_t i = half; i < n; ++i) {
        values[i] = static_cast<std::int64_t>(n - (i - half));
      }
      break;
    }
    case Family::InversionPct: {
      const double pct = require_target(spec);
      const std::uint64_t max_inv =
          n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
      const auto target = feasible_count(spec, pct, max_inv, "inversions");
      values = inversion_controlled(n, target, rng);
      break;
    }
    case Family::RunsPct: {
      const double pct = require_target(spec);
      const auto steps = feasible_count(spec, pct, n < 2 ? 0 : n - 1, "step-downs");
      values = runs_controlled(n, steps, rng);
      break;
    }
    case Family::MaxDistPct: {
      const double pct = require_target(spec);
      std::size_t d = 0;
      if (n > 0) {
        const double want = std::ceil(pct * static_cast<double>(n) / 100.0 - 1e-9);
        d = std::min<std::size_t>(n - 1, static_cast<std::size_t>(std::max(0.0, want)));
        const double achieved = 100.0 * static_cast<double>(d) / static_cast<double>(n);
        if (std::abs(achieved - pct) > kTolerancePct) {
          throw InfeasibleSpec("maxdist-pct: max displacement " + std::to_string(pct) +
                               "% unreachable for n=" + std::to_string(n) +
                               " (nearest is " + std::to_string(achieved) + "%)");
        }
      } else if (pct > kTolerancePct) {
        throw InfeasibleSpec("maxdist-pct: n=0 admits only 0%");
      }
      values = displacement_controlled(n, d, rng);
      break;
    }
  }
  return from_values(values);
}

Achieved measure(const std::vector<std::int64_t>& keys) {
  const std::size_t n = keys.size();
  Achieved a;
  if (n >= 2) {
    const double max_inv = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    a.inv_pct = 100.0 * static_cast<double>(metrics::inv(keys)) / max_inv;
    a.runs_pct = 100.0 * static_cast<double>(metrics::runs(keys)) /
                 static_cast<double>(n - 1);
  }
  if (n >= 1) {
    a.maxdist_pct = 100.0 * static_cast<double>(metrics::max_disp(keys)) /
                    static_cast<double>(n);
  }
  return a;
}

Achieved verify(const GeneratorSpec& /*spec*/, const std::vector<Element>& x) {
  return measure(keys_of(x));
}

std::string to_json(const GeneratorSpec& spec) {
  nlohmann::json j;
  j["family"] = std::string(to_string(spec.family));
  j["n"] = spec.n;
  if (spec.target_pct) {
    j["target_pct"] = *spec.target_pct;
  } else {
    j["target_pct"] = nullptr;
  }
  j["seed"] = spec.seed;
  return j.dump();
}

GeneratorSpec spec_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("generator spec: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("generator spec: expected an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "family" && key != "n" && key != "target_pct" && key != "seed") {
      throw std::invalid_argument("generator spec: unknown field '" + key + "'");
    }
  }
  for (const char* key : {"family", "n", "seed"}) {
    if (!j.contains(key)) {
      throw std::invalid_argument(std::string("generator spec: missing field '") +
                                  key + "'");
    }
  }
  GeneratorSpec spec;
  try {
    spec.family = parse_family(j.at("family").get<std::string>());
    if (!j.at("n").is_number_unsigned() && !(j.at("n").is_number_integer() &&
                                             j.at("n").get<std::int64_t>() >= 0)) {
      throw std::invalid_argument("generator spec: n must be a nonnegative integer");
    }
    spec.n = j.at("n").get<std::size_t>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("target_pct") && !j.at("target_pct").is_null()) {
      spec.target_pct = j.at("target_pct").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("generator spec: ") + e.what());
  }
  if (uses_target(spec.family) && !spec.target_pct) {
    throw std::invalid_argument("generator spec: family '" +
                                std::string(to_string(spec.family)) +
                                "' needs target_pct");
  }
  return spec;
}

}  // namespace neatsort::gen
