#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "dam/model/config.hpp"
#include "dam/numerics/tape.hpp"

namespace dam::model {

/// Hyperparameters plus every learnable block of one model instance.
struct ModelParameters {
  ModelConfig config;
  numerics::ParameterSet params;
};

// Uniform in +-sqrt(6 / (fan_in + fan_out)).
numerics::Tensor2 glorot_uniform(std::size_t fan_in, std::size_t fan_out, std::mt19937_64& rng);
numerics::Tensor2 uniform_tensor(std::size_t rows, std::size_t cols, double limit,
                                 std::mt19937_64& rng);

// Adds "<prefix>.weight" (in x out, Glorot) and "<prefix>.bias" (1 x out, zero).
void add_dense_block(numerics::ParameterSet& params, const std::string& prefix, std::size_t in,
                     std::size_t out, std::mt19937_64& rng);
// Three-layer classifier head "head1".."head3".
void add_classifier_head(numerics::ParameterSet& params, std::size_t in, std::size_t hidden,
                         std::size_t outputs, std::mt19937_64& rng);

inline constexpr double kEmbeddingInitLimit = 0.05;
inline constexpr double kForgetGateBias = 1.0;

/// DAM blocks: embedding, cross dense, forward/backward LSTM (gate order i, f, o, g),
/// post-LSTM dense, attention scorer (attention pooling only), classifier head.
ModelParameters initialize_dam_parameters(const ModelConfig& config, std::uint64_t seed);

}  // namespace dam::model
