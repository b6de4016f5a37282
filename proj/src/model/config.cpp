#include "dam/model/config.hpp"

#include "dam/errors.hpp"

namespace dam::model {

void ModelConfig::validate() const {
  auto fail = [](const std::string& m) { throw ArgumentError("invalid model config: " + m); };
  if (uses_text()) {
    if (vocab_size < 2) fail("vocab_size must include PAD and OOV");
    if (embedding_dim == 0) fail("embedding_dim must be positive");
  }
  if (kind == ModelKind::dam) {
    if (model_dim == 0 || model_dim % 2 != 0) fail("model_dim must be positive and even");
    if (pooling == PoolingStrategy::attention && attention_dim == 0)
      fail("attention_dim must be positive");
  }
  if ((kind == ModelKind::dam || kind == ModelKind::embd_text) && head_hidden == 0)
    fail("head_hidden must be positive");
  if (kind == ModelKind::mlp_structured && mlp_hidden == 0) fail("mlp_hidden must be positive");
  if (uses_structured() && structured_dim == 0) fail("structured_dim must be positive");
}

std::string to_string(ModelKind v) {
  switch (v) {
    case ModelKind::dam: return "dam";
    case ModelKind::logreg_structured: return "logreg";
    case ModelKind::mlp_structured: return "mlp";
    case ModelKind::embd_text: return "embd";
  }
  return "?";
}

std::string to_string(Task v) { return v == Task::binary ? "binary" : "multiclass"; }

std::string to_string(PoolingStrategy v) {
  switch (v) {
    case PoolingStrategy::attention: return "attention";
    case PoolingStrategy::sum: return "sum";
    case PoolingStrategy::average: return "avg";
    case PoolingStrategy::max: return "max";
  }
  return "?";
}

std::string to_string(MulticlassLoss v) {
  return v == MulticlassLoss::categorical ? "categorical" : "one_vs_rest";
}

ModelKind parse_model_kind(std::string_view s) {
  if (s == "dam") return ModelKind::dam;
  if (s == "logreg" || s == "logreg_structured") return ModelKind::logreg_structured;
  if (s == "mlp" || s == "mlp_structured") return ModelKind::mlp_structured;
  if (s == "embd" || s == "embd_text") return ModelKind::embd_text;
  throw ArgumentError("unknown model kind '" + std::string(s) + "'");
}

Task parse_task(std::string_view s) {
  if (s == "binary") return Task::binary;
  if (s == "multiclass") return Task::multiclass;
  throw ArgumentError("unknown task '" + std::string(s) + "'");
}

PoolingStrategy parse_pooling(std::string_view s) {
  if (s == "attention") return PoolingStrategy::attention;
  if (s == "sum") return PoolingStrategy::sum;
  if (s == "avg" || s == "average") return PoolingStrategy::average;
  if (s == "max") return PoolingStrategy::max;
  throw ArgumentError("unknown pooling '" + std::string(s) + "'");
}

MulticlassLoss parse_multiclass_loss(std::string_view s) {
  if (s == "categorical") return MulticlassLoss::categorical;
  if (s == "one_vs_rest") return MulticlassLoss::one_vs_rest;
  throw ArgumentError("unknown multiclass loss '" + std::string(s) + "'");
}

}  // namespace dam::model
