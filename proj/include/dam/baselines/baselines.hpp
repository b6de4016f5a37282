#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "dam/model/config.hpp"
#include "dam/model/forward.hpp"
#include "dam/model/parameters.hpp"
#include "dam/training/metrics.hpp"
#include "dam/training/trainer.hpp"

namespace dam::baselines {

// logreg_structured: one affine layer on p_s.
// mlp_structured:    two ReLU layers of width mlp_hidden on p_s, then the output layer.
// embd_text:         embedding sum over active tokens, then the three-layer head.
bool is_baseline(model::ModelKind kind) noexcept;

model::ModelParameters initialize_baseline_parameters(const model::ModelConfig& config,
                                                      std::uint64_t seed);

model::GraphOutputs build_baseline_graph(numerics::GradientTape& tape,
                                         const model::ModelConfig& config,
                                         const numerics::ParameterSet& params,
                                         const model::ModelInput& input);

// Throws ArgumentError when the input lacks what the kind consumes.
model::Prediction baseline_forward(const model::ModelInput& input,
                                   const model::ModelParameters& model);

// Any model kind, DAM included.
model::ModelParameters initialize_parameters(const model::ModelConfig& config, std::uint64_t seed);
model::GraphBuilder graph_builder_for(const model::ModelConfig& config);

// DAM ablations: DSMP replaces attention with sum pooling, the bi-LSTM baseline
// uses average pooling.
model::ModelConfig dsmp_config(model::ModelConfig base);
model::ModelConfig bilstm_config(model::ModelConfig base);

struct BaselineRun {
  training::TrainResult trained;
  training::MetricsReport report;  // on `evaluation` (validation set when absent)
};

BaselineRun baseline_train(const model::ModelConfig& config,
                           const training::TrainConfig& train_config,
                           std::span<const training::Example> train_set,
                           std::span<const training::Example> validation_set,
                           std::span<const training::Example> evaluation = {});

}  // namespace dam::baselines
