#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace dam::model {

enum class ModelKind { dam, logreg_structured, mlp_structured, embd_text };
enum class Task { binary, multiclass };
enum class PoolingStrategy { attention, sum, average, max };
// Multiclass objective: softmax cross-entropy, or the per-class logistic form
// summing log p and log(1 - p) over every class.
enum class MulticlassLoss { categorical, one_vs_rest };

inline constexpr std::size_t kNumResourceCategories = 6;

struct ModelConfig {
  ModelKind kind = ModelKind::dam;
  Task task = Task::multiclass;
  PoolingStrategy pooling = PoolingStrategy::attention;
  bool wide = true;
  MulticlassLoss multiclass_loss = MulticlassLoss::categorical;

  std::size_t vocab_size = 2;
  std::size_t structured_dim = 0;
  std::size_t embedding_dim = 300;  // d_w
  std::size_t model_dim = 200;      // d_m; each LSTM direction gets d_m / 2
  std::size_t attention_dim = 64;   // d_a
  std::size_t head_hidden = 200;    // width of the two hidden classifier layers
  std::size_t mlp_hidden = 128;

  std::size_t num_outputs() const noexcept {
    return task == Task::binary ? 1 : kNumResourceCategories;
  }
  std::size_t num_classes() const noexcept {
    return task == Task::binary ? 2 : kNumResourceCategories;
  }
  bool uses_text() const noexcept {
    return kind == ModelKind::dam || kind == ModelKind::embd_text;
  }
  bool uses_structured() const noexcept {
    return kind == ModelKind::logreg_structured || kind == ModelKind::mlp_structured ||
           (kind == ModelKind::dam && wide);
  }

  // Throws ArgumentError on inconsistent dimensions.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

std::string to_string(ModelKind v);
std::string to_string(Task v);
std::string to_string(PoolingStrategy v);
std::string to_string(MulticlassLoss v);

// Accept the names produced by to_string (plus "avg" for average pooling).
ModelKind parse_model_kind(std::string_view s);
Task parse_task(std::string_view s);
PoolingStrategy parse_pooling(std::string_view s);
MulticlassLoss parse_multiclass_loss(std::string_view s);

}  // namespace dam::model
