#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dam/text/record.hpp"

namespace dam::datagen {

struct Partitions {
  std::vector<text::PatientRecord> train;
  std::vector<text::PatientRecord> validation;
  std::vector<text::PatientRecord> test;
};

// Seeded shuffle, then contiguous cuts of round(f * n) for train and
// validation; test takes the remainder. Fractions must be >= 0 and sum to 1
// within 1e-9.
Partitions split(const std::vector<text::PatientRecord>& dataset,
                 const std::array<double, 3>& fractions, std::uint64_t seed);

}  // namespace dam::datagen
