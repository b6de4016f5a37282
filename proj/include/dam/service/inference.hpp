#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "dam/model/forward.hpp"
#include "dam/service/checkpoint.hpp"
#include "dam/service/feedback.hpp"
#include "dam/text/document.hpp"
#include "dam/text/record.hpp"
#include "dam/text/structured.hpp"

namespace dam::service {

struct Featurized {
  text::Document document;
  text::StructuredVector structured;
  // Raw tokens at the active positions; ["<oov>"] for an empty note.
  std::vector<std::string> tokens;
};

// The same preprocessing the checkpoint was trained with.
Featurized featurize(const text::PatientRecord& record, const CheckpointMetadata& meta);

struct RecordPrediction {
  std::string id;
  model::Prediction prediction;
  std::vector<std::string> tokens;
};

RecordPrediction predict_record(const Checkpoint& ckpt, const text::PatientRecord& record);

// "<kind>-<pooling>-<checksum>".
std::string model_version(const Checkpoint& ckpt);

// {"id", "predicted_class", "probabilities"}.
nlohmann::json prediction_json(const RecordPrediction& p, const model::ModelConfig& config);
// {"id", "predicted_class", "tokens", "attention"}. Throws ExplanationUnavailableError
// unless the checkpoint uses attention pooling.
nlohmann::json explanation_json(const RecordPrediction& p, const model::ModelConfig& config);

void require_explainable(const model::ModelConfig& config);

struct Response {
  int status = 200;
  nlohmann::json body;
};

// Error body {"error": {"code", "message"[, "field"]}} with the matching status.
Response error_response(const std::exception& e);

/// Request handlers behind the HTTP routes. The active checkpoint is immutable
/// and shared; reload swaps it between requests.
class InferenceService {
 public:
  explicit InferenceService(std::filesystem::path feedback_path);

  void load(Checkpoint ckpt);
  void load_file(const std::filesystem::path& path);
  std::shared_ptr<const Checkpoint> current() const;

  Response predict(const std::string& body) const;
  Response explain(const std::string& body) const;
  Response feedback(const std::string& body);
  Response health() const;

  FeedbackStore& feedback_store() noexcept { return feedback_; }

 private:
  std::shared_ptr<const Checkpoint> require_model() const;

  mutable std::mutex mu_;
  std::shared_ptr<const Checkpoint> current_;
  FeedbackStore feedback_;
};

}  // namespace dam::service
