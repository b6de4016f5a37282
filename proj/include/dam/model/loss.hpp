#pragma once

#include <span>

#include "dam/model/config.hpp"
#include "dam/model/forward.hpp"
#include "dam/numerics/tape.hpp"

namespace dam::model {

// Probabilities are clamped to [kProbabilityClamp, 1 - kProbabilityClamp] before log.
inline constexpr double kProbabilityClamp = 1e-7;

// Negative log-likelihood of one record (binary: -log p or -log(1 - p);
// multiclass: -log p_c, or the per-class logistic sum for one_vs_rest).
double record_loss(std::span<const double> class_scores, int label, Task task,
                   MulticlassLoss form = MulticlassLoss::categorical);

// Summed over records. Throws ArgumentError for labels outside the task's range.
double loss(std::span<const Prediction> predictions, std::span<const int> labels, Task task,
            MulticlassLoss form = MulticlassLoss::categorical);

// Same quantity recorded on the tape (1 x 1).
numerics::Var loss_graph(numerics::GradientTape& tape, numerics::Var scores, int label,
                         Task task, MulticlassLoss form = MulticlassLoss::categorical);

void check_label(int label, Task task);

}  // namespace dam::model
