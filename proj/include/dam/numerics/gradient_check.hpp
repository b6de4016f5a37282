#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dam/numerics/tape.hpp"

namespace dam::numerics {

// Evaluates the loss at `params`. When `grads` is non-null it must also add the
// analytic gradient into it.
using LossWithGradient = std::function<double(const ParameterSet& params, Gradients* grads)>;

struct BlockCheck {
  std::string name;
  std::size_t coordinates_checked = 0;
  double max_relative_error = 0.0;
  // Coordinates where the central difference itself can't resolve the
  // gradient to `resolution`: its roundoff bound is too large relative to the
  // estimate, or the stencil straddles a kink. Computed from loss values only.
  std::size_t unresolved = 0;
};

struct GradientCheckReport {
  std::vector<BlockCheck> blocks;

  double max_relative_error() const noexcept;
  bool passed(double tolerance) const noexcept { return max_relative_error() < tolerance; }
  std::size_t unresolved() const noexcept;
};

struct GradientCheckOptions {
  double epsilon = 1e-5;
  std::size_t coordinates_per_block = 20;
  std::uint64_t seed = 1;
  double resolution = 1e-5;
};

/// Compares the analytic gradient with central differences
/// (f(x+eps) - f(x-eps)) / 2eps on a random subsample of each block (the whole
/// block when it is small). Error is |ga - gn| / max(|ga|, |gn|, 1e-8).
GradientCheckReport gradient_check(const LossWithGradient& loss_fn, const ParameterSet& params,
                                   const GradientCheckOptions& options = {});

}  // namespace dam::numerics
