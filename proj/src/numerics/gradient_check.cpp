#include "dam/numerics/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "dam/errors.hpp"

namespace dam::numerics {

double GradientCheckReport::max_relative_error() const noexcept {
  double worst = 0.0;
  for (const auto& b : blocks) worst = std::max(worst, b.max_relative_error);
  return worst;
}

std::size_t GradientCheckReport::unresolved() const noexcept {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.unresolved;
  return n;
}

GradientCheckReport gradient_check(const LossWithGradient& loss_fn, const ParameterSet& params,
                                   const GradientCheckOptions& options) {
  if (!(options.epsilon > 0.0)) throw ArgumentError("gradient_check epsilon must be positive");

  Gradients analytic(params);
  const double base = loss_fn(params, &analytic);
  if (!std::isfinite(base)) throw NumericError("non-finite loss at the unperturbed point");

  std::mt19937_64 rng(options.seed);
  ParameterSet probe = params;
  GradientCheckReport report;

  for (std::size_t b = 0; b < params.size(); ++b) {
    const ParamId id{b};
    BlockCheck check{params.name(id), 0, 0.0};
    const std::size_t n = params[id].size();

    std::vector<std::size_t> coords(n);
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (n > options.coordinates_per_block) {
      std::shuffle(coords.begin(), coords.end(), rng);
      coords.resize(options.coordinates_per_block);
    }

    for (std::size_t c : coords) {
      const double original = probe[id][c];
      probe[id][c] = original + options.epsilon;
      const double up = loss_fn(probe, nullptr);
      probe[id][c] = original - options.epsilon;
      const double down = loss_fn(probe, nullptr);
      probe[id][c] = original;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        throw NumericError("non-finite loss while perturbing block '" + check.name + "'");
      }
      const double numeric = (up - down) / (2.0 * options.epsilon);
      // A few ulps of the loss, seen through the difference quotient.
      const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() *
                              std::max({std::abs(up), std::abs(down), std::abs(base)}) /
                              (2.0 * options.epsilon);
      // On a smooth stencil the second difference is O(eps^2); a slope jump makes it O(eps).
      const double second = std::abs(up - 2.0 * base + down) / (2.0 * options.epsilon);
      const bool exact = up == down;
      const bool noisy = roundoff > options.resolution * std::abs(numeric);
      const bool kink = second > 1e-2 * std::abs(numeric) + roundoff;
      if (!exact && (noisy || kink)) ++check.unresolved;
      const double ga = analytic[id][c];
      const double denom = std::max({std::abs(ga), std::abs(numeric), 1e-8});
      check.max_relative_error = std::max(check.max_relative_error,
                                          std::abs(ga - numeric) / denom);
      ++check.coordinates_checked;
    }
    report.blocks.push_back(std::move(check));
  }
  return report;
}

}  // namespace dam::numerics
