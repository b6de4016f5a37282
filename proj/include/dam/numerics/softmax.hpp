#pragma once

#include <span>
#include <vector>

namespace dam::numerics {

// Softmax with the maximum subtracted before exponentiation. Throws on empty input.
std::vector<double> softmax_stable(std::span<const double> v);

// Overflow-free logistic sigmoid.
double logistic(double x) noexcept;

}  // namespace dam::numerics
