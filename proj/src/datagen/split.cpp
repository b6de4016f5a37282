#include "dam/datagen/split.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "dam/errors.hpp"

namespace dam::datagen {

Partitions split(const std::vector<text::PatientRecord>& dataset,
                 const std::array<double, 3>& fractions, std::uint64_t seed) {
  for (double f : fractions) {
    if (!(f >= 0.0)) throw ArgumentError("split fractions must be nonnegative");
  }
  const double total = fractions[0] + fractions[1] + fractions[2];
  if (std::abs(total - 1.0) > 1e-9) {
    throw ArgumentError("split fractions sum to " + std::to_string(total) + ", expected 1");
  }
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const auto n = static_cast<double>(dataset.size());
  const std::size_t n_train =
      std::min(dataset.size(), static_cast<std::size_t>(std::llround(fractions[0] * n)));
  const std::size_t n_val = std::min(dataset.size() - n_train,
                                     static_cast<std::size_t>(std::llround(fractions[1] * n)));
  Partitions p;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& r = dataset[order[i]];
    if (i < n_train) {
      p.train.push_back(r);
    } else if (i < n_train + n_val) {
      p.validation.push_back(r);
    } else {
      p.test.push_back(r);
    }
  }
  return p;
}

}  // namespace dam::datagen
