#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dam/text/record.hpp"

namespace dam::datagen {

struct ResourceKeyword {
  std::string token;
  int weight = 1;  // 1 or 2
};

struct CategoricalDistribution {
  std::string field;
  std::vector<std::string> values;
  std::vector<double> weights;
};

// Normal(mean, stddev) clamped to [lo, hi] and rounded to `decimals`.
struct NumericDistribution {
  std::string field;
  double mean = 0.0;
  double stddev = 1.0;
  double lo = 0.0;
  double hi = 0.0;
  int decimals = 0;
};

struct GenConfig {
  std::size_t record_count = 1000;
  std::uint64_t seed = 1;
  std::vector<ResourceKeyword> keywords;
  std::vector<std::string> fillers;
  // Filler tokens per note, inclusive range.
  std::size_t min_filler_tokens = 8;
  std::size_t max_filler_tokens = 40;
  std::size_t max_keywords = 4;
  double noise_rate = 0.1;
  // Probability that any one structured field is left null.
  double missing_rate = 0.05;
  std::vector<CategoricalDistribution> categorical;
  std::vector<NumericDistribution> numeric;
  // bump = 1 iff structured[bump_field] == bump_value.
  std::string bump_field = "arrival_method";
  std::string bump_value = "ambulance";

  // Throws ArgumentError.
  void validate() const;
};

/// 40 keywords (30 of weight 1, 10 of weight 2), about 160 fillers, and field
/// distributions matching default_layout().
GenConfig default_gen_config();

// Deterministic in config: record i draws from its own seed derived from
// (config.seed, i), so any index range can be generated independently.
std::vector<text::PatientRecord> generate_corpus(const GenConfig& config);
text::PatientRecord generate_record(const GenConfig& config, std::size_t index);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace dam::datagen
