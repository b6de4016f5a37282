#pragma once

#include <cstdint>

#include "dam/numerics/tape.hpp"

namespace dam::training {

/// First/second moment estimates mirroring a ParameterSet.
struct AdamState {
  explicit AdamState(const numerics::ParameterSet& params) : m(params), v(params) {}

  numerics::Gradients m;
  numerics::Gradients v;
  std::uint64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// One bias-corrected Adam update; increments state.step. Throws ShapeError when
// grads or state do not mirror params.
void adam_step(numerics::ParameterSet& params, const numerics::Gradients& grads, AdamState& state,
               double learning_rate);

}  // namespace dam::training
