#include "dam/model/parameters.hpp"

#include <cmath>

#include "dam/errors.hpp"

namespace dam::model {

using numerics::ParameterSet;
using numerics::Tensor2;

Tensor2 uniform_tensor(std::size_t rows, std::size_t cols, double limit, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-limit, limit);
  Tensor2 t(rows, cols);
  for (double& v : t.data()) v = dist(rng);
  return t;
}

Tensor2 glorot_uniform(std::size_t fan_in, std::size_t fan_out, std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  return uniform_tensor(fan_in, fan_out, limit, rng);
}

void add_dense_block(ParameterSet& params, const std::string& prefix, std::size_t in,
                     std::size_t out, std::mt19937_64& rng) {
  params.add(prefix + ".weight", glorot_uniform(in, out, rng));
  params.add(prefix + ".bias", Tensor2(1, out));
}

void add_classifier_head(ParameterSet& params, std::size_t in, std::size_t hidden,
                         std::size_t outputs, std::mt19937_64& rng) {
  add_dense_block(params, "head1", in, hidden, rng);
  add_dense_block(params, "head2", hidden, hidden, rng);
  add_dense_block(params, "head3", hidden, outputs, rng);
}

namespace {

void add_lstm_direction(ParameterSet& params, const std::string& prefix, std::size_t in,
                        std::size_t hidden, std::mt19937_64& rng) {
  params.add(prefix + ".input", glorot_uniform(in, 4 * hidden, rng));
  params.add(prefix + ".recurrent", glorot_uniform(hidden, 4 * hidden, rng));
  Tensor2 bias(1, 4 * hidden);
  for (std::size_t j = hidden; j < 2 * hidden; ++j) bias[j] = kForgetGateBias;
  params.add(prefix + ".bias", std::move(bias));
}

}  // namespace

ModelParameters initialize_dam_parameters(const ModelConfig& config, std::uint64_t seed) {
  if (config.kind != ModelKind::dam) throw ArgumentError("initialize_dam_parameters needs kind=dam");
  config.validate();
  std::mt19937_64 rng(seed);
  ModelParameters mp{config, {}};
  auto& p = mp.params;
  const std::size_t dm = config.model_dim;
  const std::size_t half = dm / 2;

  p.add("embedding", uniform_tensor(config.vocab_size, config.embedding_dim, kEmbeddingInitLimit, rng));
  add_dense_block(p, "cross", config.embedding_dim, dm, rng);
  add_lstm_direction(p, "lstm_fwd", dm, half, rng);
  add_lstm_direction(p, "lstm_bwd", dm, half, rng);
  add_dense_block(p, "post", dm, dm, rng);
  if (config.pooling == PoolingStrategy::attention) {
    add_dense_block(p, "attn_hidden", dm, config.attention_dim, rng);
    // No output bias: softmax is shift-invariant, so it would never receive gradient.
    p.add("attn_score.weight", glorot_uniform(config.attention_dim, 1, rng));
  }
  const std::size_t head_in = dm + (config.wide ? config.structured_dim : 0);
  add_classifier_head(p, head_in, config.head_hidden, config.num_outputs(), rng);
  return mp;
}

}  // namespace dam::model
