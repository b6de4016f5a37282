#include "dam/training/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "dam/errors.hpp"

namespace dam::training {

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw ArgumentError("roc_auc: " + std::to_string(scores.size()) + " scores vs " +
                        std::to_string(labels.size()) + " labels");
  }
  const std::size_t n = scores.size();
  std::size_t positives = 0;
  for (int l : labels) {
    if (l != 0 && l != 1) throw ArgumentError("roc_auc labels must be 0 or 1");
    positives += static_cast<std::size_t>(l);
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw MetricError("roc_auc is undefined when only one class is present");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of (1-based, tie-averaged) ranks of the positives.
  double positive_rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k)
      if (labels[order[k]] == 1) positive_rank_sum += avg_rank;
    i = j + 1;
  }
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

AverageAuc average_auc(std::span<const double> scores, std::size_t num_classes,
                       std::span<const int> labels) {
  if (num_classes == 0 || scores.size() != labels.size() * num_classes) {
    throw ArgumentError("average_auc: score matrix does not match " +
                        std::to_string(labels.size()) + " x " + std::to_string(num_classes));
  }
  AverageAuc out;
  double total = 0.0;
  std::size_t used = 0;
  std::vector<double> column(labels.size());
  std::vector<int> one_vs_all(labels.size());
  for (std::size_t c = 0; c < num_classes; ++c) {
    std::size_t members = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      column[i] = scores[i * num_classes + c];
      one_vs_all[i] = labels[i] == static_cast<int>(c) ? 1 : 0;
      members += static_cast<std::size_t>(one_vs_all[i]);
    }
    if (members == 0 || members == labels.size()) {
      out.skipped_classes.push_back(static_cast<int>(c));
      continue;
    }
    total += roc_auc(column, one_vs_all);
    ++used;
  }
  if (used == 0) throw MetricError("average_auc: no class has both members and non-members");
  out.value = total / static_cast<double>(used);
  return out;
}

ConfusionMatrix confusion_matrix(std::span<const int> predicted, std::span<const int> truth,
                                 std::size_t num_classes) {
  if (predicted.size() != truth.size()) throw ArgumentError("confusion_matrix length mismatch");
  ConfusionMatrix m(num_classes, std::vector<std::size_t>(num_classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto t = static_cast<std::size_t>(truth[i]);
    const auto p = static_cast<std::size_t>(predicted[i]);
    if (truth[i] < 0 || predicted[i] < 0 || t >= num_classes || p >= num_classes) {
      throw ArgumentError("confusion_matrix class out of range");
    }
    ++m[t][p];
  }
  return m;
}

double accuracy_from_confusion(const ConfusionMatrix& m) {
  std::size_t total = 0, diagonal = 0;
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m[r].size(); ++c) total += m[r][c];
    diagonal += m[r][r];
  }
  if (total == 0) throw MetricError("accuracy of an empty confusion matrix");
  return static_cast<double>(diagonal) / static_cast<double>(total);
}

int group_by_acuity(int resource_category) {
  switch (resource_category) {
    case 0: return 5;
    case 1: return 4;
    case 2:
    case 3: return 3;
    case 4:
    case 5: return 2;
    default:
      throw ArgumentError("resource category " + std::to_string(resource_category) +
                          " outside 0..5");
  }
}

GroupedConfusion grouped_confusion(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw ArgumentError("grouped_confusion length mismatch");
  GroupedConfusion g;
  std::size_t diagonal = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto t = static_cast<std::size_t>(group_by_acuity(truth[i]) - 2);
    const auto p = static_cast<std::size_t>(group_by_acuity(predicted[i]) - 2);
    ++g.counts[t][p];
    if (t == p) ++diagonal;
  }
  g.accuracy = truth.empty() ? 0.0 : static_cast<double>(diagonal) / static_cast<double>(truth.size());
  return g;
}

MetricsReport evaluate_predictions(std::span<const model::Prediction> predictions,
                                   std::span<const int> labels, model::Task task) {
  if (predictions.size() != labels.size()) throw ArgumentError("evaluate: length mismatch");
  if (predictions.empty()) throw MetricError("evaluate: no records");
  MetricsReport r;
  r.task = task;
  r.count = labels.size();

  std::vector<int> predicted;
  predicted.reserve(predictions.size());
  for (const auto& p : predictions) predicted.push_back(p.predicted_class);
  const std::size_t classes = task == model::Task::binary ? 2 : model::kNumResourceCategories;
  r.confusion = confusion_matrix(predicted, labels, classes);
  r.accuracy = accuracy_from_confusion(r.confusion);

  try {
    if (task == model::Task::binary) {
      std::vector<double> scores;
      scores.reserve(predictions.size());
      for (const auto& p : predictions) scores.push_back(p.class_scores.at(0));
      r.auc = roc_auc(scores, labels);
    } else {
      std::vector<double> scores;
      scores.reserve(predictions.size() * classes);
      for (const auto& p : predictions) {
        if (p.class_scores.size() != classes) throw ShapeError("multiclass prediction width");
        scores.insert(scores.end(), p.class_scores.begin(), p.class_scores.end());
      }
      auto avg = average_auc(scores, classes, labels);
      r.auc = avg.value;
      r.skipped_classes = std::move(avg.skipped_classes);
    }
  } catch (const MetricError&) {
    r.auc_defined = false;
    r.auc = 0.0;
  }

  if (task == model::Task::multiclass) {
    r.has_grouped = true;
    r.grouped = grouped_confusion(predicted, labels);
  }
  return r;
}

}  // namespace dam::training
