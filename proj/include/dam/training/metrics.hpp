#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "dam/model/config.hpp"
#include "dam/model/forward.hpp"

namespace dam::training {

// Probability that a random positive outranks a random negative, ties counted
// as 1/2 (Mann-Whitney U via average ranks). Throws MetricError unless both
// classes are present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

struct AverageAuc {
  double value = 0.0;
  std::vector<int> skipped_classes;  // classes absent from the labels
};

// Unweighted mean of one-vs-all roc_auc over the classes present in `labels`.
// `scores` is row-major N x num_classes.
AverageAuc average_auc(std::span<const double> scores, std::size_t num_classes,
                       std::span<const int> labels);

using ConfusionMatrix = std::vector<std::vector<std::size_t>>;  // [truth][predicted]

ConfusionMatrix confusion_matrix(std::span<const int> predicted, std::span<const int> truth,
                                 std::size_t num_classes);
double accuracy_from_confusion(const ConfusionMatrix& m);

// Resource category 0..5 -> first acuity level: 0 -> 5, 1 -> 4, 2|3 -> 3, 4|5 -> 2.
int group_by_acuity(int resource_category);

inline constexpr std::array<int, 4> kAcuityLevels = {2, 3, 4, 5};

struct GroupedConfusion {
  // Rows truth, columns predicted, both indexed by level - 2 (Level 2 first).
  std::array<std::array<std::size_t, 4>, 4> counts{};
  double accuracy = 0.0;
};

GroupedConfusion grouped_confusion(std::span<const int> predicted, std::span<const int> truth);

struct MetricsReport {
  model::Task task = model::Task::multiclass;
  std::size_t count = 0;
  double accuracy = 0.0;
  double auc = 0.0;  // roc_auc for binary, average_auc for multiclass
  bool auc_defined = true;
  std::vector<int> skipped_classes;
  ConfusionMatrix confusion;
  // Multiclass only.
  bool has_grouped = false;
  GroupedConfusion grouped;
};

MetricsReport evaluate_predictions(std::span<const model::Prediction> predictions,
                                   std::span<const int> labels, model::Task task);

}  // namespace dam::training
