#include "dam/training/adam.hpp"

#include <cmath>

#include "dam/errors.hpp"

namespace dam::training {

using numerics::ParamId;

void adam_step(numerics::ParameterSet& params, const numerics::Gradients& grads, AdamState& state,
               double learning_rate) {
  if (grads.size() != params.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw ShapeError("adam_step: " + std::to_string(params.size()) + " parameter blocks but " +
                     std::to_string(grads.size()) + " gradient blocks");
  }
  for (std::size_t b = 0; b < params.size(); ++b) {
    const ParamId id{b};
    if (!params[id].same_shape(grads[id]) || !params[id].same_shape(state.m[id])) {
      throw ShapeError("adam_step: block '" + params.name(id) + "' is " +
                       params[id].shape_string() + " but its gradient is " +
                       grads[id].shape_string());
    }
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(state.beta1, t);
  const double correction2 = 1.0 - std::pow(state.beta2, t);

  for (std::size_t b = 0; b < params.size(); ++b) {
    const ParamId id{b};
    auto theta = params[id].data();
    auto g = grads[id].data();
    auto m = state.m[id].data();
    auto v = state.v[id].data();
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      theta[i] -= learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  }
}

}  // namespace dam::training
