#include "dam/training/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "dam/errors.hpp"
#include "dam/model/loss.hpp"
#include "dam/training/adam.hpp"
#include "dam/training/metrics.hpp"

namespace dam::training {

using model::GraphBuilder;
using model::ModelConfig;
using numerics::GradientTape;
using numerics::Gradients;
using numerics::ParameterSet;

namespace {

constexpr std::size_t kChunkSize = 16;

std::size_t resolve_threads(std::size_t requested) {
  if (requested != 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ArgumentError("learning_rate must be positive");
  if (batch_size < 1) throw ArgumentError("batch_size must be at least 1");
  if (patience < 1) throw ArgumentError("patience must be at least 1");
  if (max_epochs < 1) throw ArgumentError("max_epochs must be at least 1");
}

model::ModelInput input_of(const Example& e) { return {&e.document, &e.structured}; }

std::vector<model::Prediction> predict_all(const GraphBuilder& builder,
                                           const model::ModelParameters& model,
                                           std::span<const Example> examples) {
  std::vector<model::Prediction> out;
  out.reserve(examples.size());
  for (const auto& e : examples) out.push_back(model::predict(builder, model, input_of(e)));
  return out;
}

double mean_loss(std::span<const model::Prediction> predictions, std::span<const Example> examples,
                 const ModelConfig& config) {
  if (examples.empty()) throw ArgumentError("mean_loss over zero records");
  std::vector<int> labels;
  labels.reserve(examples.size());
  for (const auto& e : examples) labels.push_back(e.label);
  return model::loss(predictions, labels, config.task, config.multiclass_loss) /
         static_cast<double>(examples.size());
}

double batch_gradient(const GraphBuilder& builder, const ModelConfig& config,
                      const ParameterSet& params, std::span<const Example* const> batch,
                      Gradients& grads, std::size_t threads) {
  if (batch.empty()) throw ArgumentError("empty batch");
  const double weight = 1.0 / static_cast<double>(batch.size());
  const std::size_t chunks = (batch.size() + kChunkSize - 1) / kChunkSize;
  std::vector<Gradients> chunk_grads(chunks);
  std::vector<double> record_losses(batch.size(), 0.0);

  auto run_chunk = [&](std::size_t c) {
    Gradients local(params);
    const std::size_t end = std::min(batch.size(), (c + 1) * kChunkSize);
    for (std::size_t i = c * kChunkSize; i < end; ++i) {
      GradientTape tape;
      const auto out = builder(tape, config, params, input_of(*batch[i]));
      const auto l = model::loss_graph(tape, out.scores, batch[i]->label, config.task,
                                       config.multiclass_loss);
      record_losses[i] = tape.value(l)[0];
      tape.backward(l, local, weight);
    }
    chunk_grads[c] = std::move(local);
  };

  const std::size_t workers = std::min(resolve_threads(threads), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c; (c = next.fetch_add(1)) < chunks;) run_chunk(c);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  grads.set_zero();
  for (const auto& g : chunk_grads) grads.add(g);
  double total = 0.0;
  for (double l : record_losses) total += l;
  return total * weight;
}

TrainResult train(const TrainConfig& config, std::span<const Example> train_set,
                  std::span<const Example> validation_set, model::ModelParameters initial,
                  const GraphBuilder& builder, const EpochCallback& on_epoch) {
  config.validate();
  if (train_set.empty()) throw ArgumentError("training set is empty");
  if (validation_set.empty()) throw ArgumentError("validation set is empty");

  model::ModelParameters current = std::move(initial);
  TrainResult result{current, {}, 0};
  AdamState adam(current.params);
  Gradients grads(current.params);
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  double best_val = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;
  std::vector<int> val_labels;
  for (const auto& e : validation_set) val_labels.push_back(e.label);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    std::vector<const Example*> batch;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size, ++batch_index) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(&train_set[order[i]]);
      const double batch_loss =
          batch_gradient(builder, current.config, current.params, batch, grads, config.threads);
      if (!std::isfinite(batch_loss) || !grads.all_finite()) {
        throw NumericError("non-finite loss in epoch " + std::to_string(epoch) + " batch " +
                           std::to_string(batch_index));
      }
      loss_sum += batch_loss * static_cast<double>(batch.size());
      adam_step(current.params, grads, adam, config.learning_rate);
    }

    const auto val_predictions = predict_all(builder, current, validation_set);
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(train_set.size());
    rec.val_loss = mean_loss(val_predictions, validation_set, current.config);
    const auto report = evaluate_predictions(val_predictions, val_labels, current.config.task);
    rec.val_accuracy = report.accuracy;
    if (report.auc_defined) rec.val_auc = report.auc;
    result.history.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (!std::isfinite(rec.val_loss)) {
      throw NumericError("non-finite validation loss after epoch " + std::to_string(epoch));
    }
    if (rec.val_loss < best_val) {
      best_val = rec.val_loss;
      since_best = 0;
      result.model = current;
      result.best_epoch = epoch;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  return result;
}

}  // namespace dam::training
