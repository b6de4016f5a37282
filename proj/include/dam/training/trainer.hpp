#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dam/model/forward.hpp"
#include "dam/model/parameters.hpp"
#include "dam/text/document.hpp"
#include "dam/text/structured.hpp"

namespace dam::training {

struct TrainConfig {
  double learning_rate = 0.001;
  std::size_t batch_size = 512;
  std::size_t max_epochs = 50;
  std::size_t patience = 3;
  std::uint64_t seed = 1;
  // Worker threads for per-record gradients; 0 picks hardware concurrency.
  // Results do not depend on this value.
  std::size_t threads = 0;

  void validate() const;
};

/// A model-ready record. `label` is task-specific (0/1 or 0..5); `outcome` keeps
/// the raw resource category.
struct Example {
  text::Document document;
  text::StructuredVector structured;
  int label = 0;
  int outcome = 0;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
  std::optional<double> val_auc;
};

struct TrainResult {
  model::ModelParameters model;  // parameters from the best validation epoch
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

model::ModelInput input_of(const Example& e);

std::vector<model::Prediction> predict_all(const model::GraphBuilder& builder,
                                           const model::ModelParameters& model,
                                           std::span<const Example> examples);

// Mean per-record loss.
double mean_loss(std::span<const model::Prediction> predictions, std::span<const Example> examples,
                 const model::ModelConfig& config);

/// Mean loss and its gradient over `batch`. Records are processed in fixed-size
/// chunks whose partial sums are reduced in chunk order, so the result is
/// bitwise independent of the thread count.
double batch_gradient(const model::GraphBuilder& builder, const model::ModelConfig& config,
                      const numerics::ParameterSet& params, std::span<const Example* const> batch,
                      numerics::Gradients& grads, std::size_t threads);

/// Minibatch Adam with a seeded per-epoch shuffle, validation after every epoch,
/// and early stopping once validation loss has not improved for `patience`
/// epochs. Throws NumericError naming the epoch and batch on a non-finite loss.
TrainResult train(const TrainConfig& config, std::span<const Example> train_set,
                  std::span<const Example> validation_set, model::ModelParameters initial,
                  const model::GraphBuilder& builder, const EpochCallback& on_epoch = {});

}  // namespace dam::training
