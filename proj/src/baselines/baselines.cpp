#include "dam/baselines/baselines.hpp"

#include <map>
#include <random>

#include "dam/errors.hpp"
#include "dam/model/layers.hpp"
#include "dam/numerics/ops.hpp"

namespace dam::baselines {

namespace ops = numerics::ops;
using model::ModelConfig;
using model::ModelKind;
using numerics::GradientTape;
using numerics::ParameterSet;
using numerics::Tensor2;
using numerics::Var;

bool is_baseline(ModelKind kind) noexcept { return kind != ModelKind::dam; }

model::ModelParameters initialize_baseline_parameters(const ModelConfig& config,
                                                      std::uint64_t seed) {
  if (!is_baseline(config.kind)) throw ArgumentError("not a baseline kind: dam");
  config.validate();
  std::mt19937_64 rng(seed);
  model::ModelParameters mp{config, {}};
  auto& p = mp.params;
  switch (config.kind) {
    case ModelKind::logreg_structured:
      model::add_dense_block(p, "out", config.structured_dim, config.num_outputs(), rng);
      break;
    case ModelKind::mlp_structured:
      model::add_dense_block(p, "hidden1", config.structured_dim, config.mlp_hidden, rng);
      model::add_dense_block(p, "hidden2", config.mlp_hidden, config.mlp_hidden, rng);
      model::add_dense_block(p, "out", config.mlp_hidden, config.num_outputs(), rng);
      break;
    case ModelKind::embd_text:
      p.add("embedding", model::uniform_tensor(config.vocab_size, config.embedding_dim,
                                               model::kEmbeddingInitLimit, rng));
      model::add_classifier_head(p, config.embedding_dim, config.head_hidden,
                                 config.num_outputs(), rng);
      break;
    case ModelKind::dam:
      break;
  }
  return mp;
}

namespace {

Var structured_input(GradientTape& tape, const ModelConfig& config,
                     const model::ModelInput& input) {
  if (input.structured == nullptr) {
    throw ArgumentError(model::to_string(config.kind) + " requires structured features");
  }
  const auto& bits = input.structured->bits;
  if (bits.size() != config.structured_dim) {
    throw ShapeError("structured vector has dimension " + std::to_string(bits.size()) +
                     ", model expects " + std::to_string(config.structured_dim));
  }
  Tensor2 row(1, bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) row[i] = bits[i];
  return tape.constant(std::move(row));
}

Var output_activation(GradientTape& tape, Var logits, model::Task task) {
  return task == model::Task::binary ? ops::sigmoid(tape, logits)
                                     : ops::softmax_rows(tape, logits);
}

// Sum over active tokens computed from sorted (id, count) pairs, so any
// permutation of the document gives bitwise-identical output.
Var bag_of_embeddings(GradientTape& tape, const ParameterSet& params, const text::Document& doc) {
  if (doc.effective_length == 0) throw ArgumentError("document has no active tokens");
  std::map<std::size_t, double> counts;
  for (auto id : doc.active()) counts[id] += 1.0;
  std::vector<std::size_t> ids;
  Tensor2 weights(1, counts.size());
  std::size_t k = 0;
  for (const auto& [id, n] : counts) {
    ids.push_back(id);
    weights[k++] = n;
  }
  Var rows = ops::gather_rows(tape, model::param_var(tape, params, "embedding"), ids);
  return ops::matmul(tape, tape.constant(std::move(weights)), rows);
}

}  // namespace

model::GraphOutputs build_baseline_graph(GradientTape& tape, const ModelConfig& config,
                                         const ParameterSet& params,
                                         const model::ModelInput& input) {
  model::GraphOutputs out;
  switch (config.kind) {
    case ModelKind::logreg_structured: {
      Var x = structured_input(tape, config, input);
      out.pooled = x;
      out.scores = output_activation(tape, model::dense_graph(tape, params, "out", x, false),
                                     config.task);
      return out;
    }
    case ModelKind::mlp_structured: {
      Var x = structured_input(tape, config, input);
      out.pooled = x;
      Var h1 = model::dense_graph(tape, params, "hidden1", x, true);
      Var h2 = model::dense_graph(tape, params, "hidden2", h1, true);
      out.scores = output_activation(tape, model::dense_graph(tape, params, "out", h2, false),
                                     config.task);
      return out;
    }
    case ModelKind::embd_text: {
      if (input.document == nullptr) throw ArgumentError("embd requires a document");
      out.pooled = bag_of_embeddings(tape, params, *input.document);
      out.scores = model::classifier_head_graph(tape, params, out.pooled, config.task);
      return out;
    }
    case ModelKind::dam:
      break;
  }
  throw ArgumentError("build_baseline_graph called for a DAM config");
}

model::Prediction baseline_forward(const model::ModelInput& input,
                                   const model::ModelParameters& model) {
  if (!is_baseline(model.config.kind)) throw ArgumentError("baseline_forward needs a baseline");
  return model::predict(build_baseline_graph, model, input);
}

model::ModelParameters initialize_parameters(const ModelConfig& config, std::uint64_t seed) {
  return config.kind == ModelKind::dam ? model::initialize_dam_parameters(config, seed)
                                       : initialize_baseline_parameters(config, seed);
}

model::GraphBuilder graph_builder_for(const ModelConfig& config) {
  if (config.kind == ModelKind::dam) return model::build_dam_graph;
  return build_baseline_graph;
}

ModelConfig dsmp_config(ModelConfig base) {
  base.kind = ModelKind::dam;
  base.pooling = model::PoolingStrategy::sum;
  return base;
}

ModelConfig bilstm_config(ModelConfig base) {
  base.kind = ModelKind::dam;
  base.pooling = model::PoolingStrategy::average;
  return base;
}

BaselineRun baseline_train(const ModelConfig& config, const training::TrainConfig& train_config,
                           std::span<const training::Example> train_set,
                           std::span<const training::Example> validation_set,
                           std::span<const training::Example> evaluation) {
  const auto builder = graph_builder_for(config);
  BaselineRun run{training::train(train_config, train_set, validation_set,
                                  initialize_parameters(config, train_config.seed), builder),
                  {}};
  const auto target = evaluation.empty() ? validation_set : evaluation;
  const auto predictions = training::predict_all(builder, run.trained.model, target);
  std::vector<int> labels;
  for (const auto& e : target) labels.push_back(e.label);
  run.report = training::evaluate_predictions(predictions, labels, config.task);
  return run;
}

}  // namespace dam::baselines
