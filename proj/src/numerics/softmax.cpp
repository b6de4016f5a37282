#include "dam/numerics/softmax.hpp"

#include <algorithm>
#include <cmath>

#include "dam/errors.hpp"

namespace dam::numerics {

std::vector<double> softmax_stable(std::span<const double> v) {
  if (v.empty()) throw ArgumentError("softmax_stable of an empty vector");
  const double peak = *std::max_element(v.begin(), v.end());
  std::vector<double> out(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::exp(v[i] - peak);
    total += out[i];
  }
  for (double& x : out) x /= total;
  return out;
}

double logistic(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace dam::numerics
