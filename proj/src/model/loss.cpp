#include "dam/model/loss.hpp"

#include <algorithm>
#include <cmath>

#include "dam/errors.hpp"
#include "dam/numerics/ops.hpp"

namespace dam::model {

namespace ops = numerics::ops;
using numerics::GradientTape;
using numerics::Var;

void check_label(int label, Task task) {
  const int classes = task == Task::binary ? 2 : static_cast<int>(kNumResourceCategories);
  if (label < 0 || label >= classes) {
    throw ArgumentError("label " + std::to_string(label) + " out of range for " +
                        to_string(task) + " task");
  }
}

namespace {

double safe_log(double p) {
  return std::log(std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp));
}

}  // namespace

double record_loss(std::span<const double> class_scores, int label, Task task,
                   MulticlassLoss form) {
  check_label(label, task);
  if (task == Task::binary) {
    if (class_scores.size() != 1) throw ShapeError("binary loss expects one score");
    const double p = class_scores[0];
    return label == 1 ? -safe_log(p) : -safe_log(1.0 - p);
  }
  if (class_scores.size() != kNumResourceCategories) {
    throw ShapeError("multiclass loss expects " + std::to_string(kNumResourceCategories) +
                     " scores, got " + std::to_string(class_scores.size()));
  }
  if (form == MulticlassLoss::categorical) return -safe_log(class_scores[label]);
  double total = 0.0;
  for (std::size_t c = 0; c < class_scores.size(); ++c) {
    total -= static_cast<int>(c) == label ? safe_log(class_scores[c])
                                          : safe_log(1.0 - class_scores[c]);
  }
  return total;
}

double loss(std::span<const Prediction> predictions, std::span<const int> labels, Task task,
            MulticlassLoss form) {
  if (predictions.size() != labels.size()) {
    throw ArgumentError("loss: " + std::to_string(predictions.size()) + " predictions vs " +
                        std::to_string(labels.size()) + " labels");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    total += record_loss(predictions[i].class_scores, labels[i], task, form);
  return total;
}

Var loss_graph(GradientTape& tape, Var scores, int label, Task task, MulticlassLoss form) {
  check_label(label, task);
  const double lo = kProbabilityClamp, hi = 1.0 - kProbabilityClamp;
  auto neg_log = [&](Var p) { return ops::affine(tape, ops::log_clamped(tape, p, lo, hi), -1.0, 0.0); };
  auto neg_log_complement = [&](Var p) { return neg_log(ops::affine(tape, p, -1.0, 1.0)); };

  const auto& value = tape.value(scores);
  if (task == Task::binary) {
    if (value.size() != 1) throw ShapeError("binary loss expects one score");
    return label == 1 ? neg_log(scores) : neg_log_complement(scores);
  }
  if (value.size() != kNumResourceCategories) throw ShapeError("multiclass loss expects 6 scores");
  if (form == MulticlassLoss::categorical) {
    return neg_log(ops::pick(tape, scores, 0, static_cast<std::size_t>(label)));
  }
  // Per-class terms: -log p at the label, -log(1 - p) elsewhere.
  Var positive = neg_log(ops::pick(tape, scores, 0, static_cast<std::size_t>(label)));
  Var rest = ops::sum_all(tape, neg_log_complement(scores));
  Var own = neg_log_complement(ops::pick(tape, scores, 0, static_cast<std::size_t>(label)));
  return ops::add(tape, positive, ops::add(tape, rest, ops::affine(tape, own, -1.0, 0.0)));
}

}  // namespace dam::model
