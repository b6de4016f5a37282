#include "dam/service/inference.hpp"

#include <chrono>

#include "dam/baselines/baselines.hpp"
#include "dam/errors.hpp"
#include "dam/text/dataset_io.hpp"
#include "dam/text/tokenizer.hpp"
#include "dam/text/vocabulary.hpp"

namespace dam::service {

using nlohmann::json;

Featurized featurize(const text::PatientRecord& record, const CheckpointMetadata& meta) {
  Featurized f;
  auto tokens = text::tokenize(text::join_note(record, meta.note_format));
  f.document = text::encode_document(tokens, meta.vocabulary, meta.max_length);
  f.document.source_record_id = record.id;
  if (tokens.empty()) {
    f.tokens = {std::string(text::kOovToken)};
  } else {
    tokens.resize(std::min(tokens.size(), meta.max_length));
    f.tokens = std::move(tokens);
  }
  f.structured = text::binarize_structured(record.structured, meta.layout);
  return f;
}

RecordPrediction predict_record(const Checkpoint& ckpt, const text::PatientRecord& record) {
  const Featurized f = featurize(record, ckpt.metadata);
  const auto& config = ckpt.model.config;
  model::ModelInput input{config.uses_text() ? &f.document : nullptr,
                          config.uses_structured() ? &f.structured : nullptr};
  return {record.id, model::predict(baselines::graph_builder_for(config), ckpt.model, input),
          f.tokens};
}

std::string model_version(const Checkpoint& ckpt) {
  return model::to_string(ckpt.model.config.kind) + "-" +
         model::to_string(ckpt.model.config.pooling) + "-" + ckpt.checksum;
}

json prediction_json(const RecordPrediction& p, const model::ModelConfig& config) {
  return json{{"id", p.id},
              {"task", model::to_string(config.task)},
              {"predicted_class", p.prediction.predicted_class},
              {"probabilities", p.prediction.probabilities()}};
}

void require_explainable(const model::ModelConfig& config) {
  if (config.kind != model::ModelKind::dam || config.pooling != model::PoolingStrategy::attention) {
    const std::string pooling =
        config.kind == model::ModelKind::dam ? model::to_string(config.pooling) : "none";
    throw ExplanationUnavailableError("explanations unavailable for pooling=" + pooling);
  }
}

json explanation_json(const RecordPrediction& p, const model::ModelConfig& config) {
  require_explainable(config);
  return json{{"id", p.id},
              {"predicted_class", p.prediction.predicted_class},
              {"tokens", p.tokens},
              {"attention", p.prediction.attention}};
}

Response error_response(const std::exception& e) {
  json err{{"message", e.what()}};
  int status = 500;
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    status = 400;
    if (!pe->field().empty()) err["field"] = pe->field();
  } else if (const auto* ve = dynamic_cast<const ValidationError*>(&e)) {
    status = 400;
    err["field"] = ve->field();
  } else if (dynamic_cast<const ServiceUnavailableError*>(&e)) {
    status = 503;
  } else if (dynamic_cast<const ExplanationUnavailableError*>(&e)) {
    status = 422;
  }
  const auto* de = dynamic_cast<const Error*>(&e);
  err["code"] = de ? de->code() : "internal_error";
  return {status, json{{"error", err}}};
}

namespace {

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("request body is not JSON: ") + e.what(), "body");
  }
}

// Predict and explain share everything but the payload builder.
template <typename Build>
Response timed(const std::shared_ptr<const Checkpoint>& ckpt, const std::string& body,
               Build build) {
  const auto start = std::chrono::steady_clock::now();
  const auto record = text::record_from_json(parse_body(body), "request");
  json out = build(predict_record(*ckpt, record));
  out["model_version"] = model_version(*ckpt);
  out["latency_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {200, out};
}

}  // namespace

InferenceService::InferenceService(std::filesystem::path feedback_path)
    : feedback_(std::move(feedback_path)) {}

void InferenceService::load(Checkpoint ckpt) {
  auto next = std::make_shared<const Checkpoint>(std::move(ckpt));
  std::lock_guard lock(mu_);
  current_ = std::move(next);
}

void InferenceService::load_file(const std::filesystem::path& path) {
  load(load_checkpoint(path));
}

std::shared_ptr<const Checkpoint> InferenceService::current() const {
  std::lock_guard lock(mu_);
  return current_;
}

std::shared_ptr<const Checkpoint> InferenceService::require_model() const {
  auto ckpt = current();
  if (!ckpt) throw ServiceUnavailableError("no model loaded");
  return ckpt;
}

Response InferenceService::predict(const std::string& body) const {
  try {
    auto ckpt = require_model();
    return timed(ckpt, body, [&](const RecordPrediction& p) {
      return prediction_json(p, ckpt->model.config);
    });
  } catch (const std::exception& e) {
    return error_response(e);
  }
}

Response InferenceService::explain(const std::string& body) const {
  try {
    auto ckpt = require_model();
    require_explainable(ckpt->model.config);
    return timed(ckpt, body, [&](const RecordPrediction& p) {
      json out = explanation_json(p, ckpt->model.config);
      out["probabilities"] = p.prediction.probabilities();
      return out;
    });
  } catch (const std::exception& e) {
    return error_response(e);
  }
}

Response InferenceService::feedback(const std::string& body) {
  try {
    const json j = parse_body(body);
    if (!j.is_object()) throw ParseError("request must be a JSON object", "body");
    auto grade_it = j.find("grade");
    if (grade_it == j.end() || !grade_it->is_number_integer()) {
      throw ValidationError("grade", "grade must be an integer in 1..5");
    }
    std::string record_id;
    if (auto it = j.find("record_id"); it != j.end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError("field 'record_id' must be a string", "record_id");
      record_id = it->get<std::string>();
    }
    std::optional<std::string> comment;
    if (auto it = j.find("comment"); it != j.end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError("field 'comment' must be a string", "comment");
      comment = it->get<std::string>();
    }
    std::string note;
    if (auto it = j.find("note_text"); it != j.end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError("field 'note_text' must be a string", "note_text");
      note = it->get<std::string>();
    } else {
      note = text::join_note(text::record_from_json(j, record_id));
    }
    const auto entry =
        feedback_.append(std::move(record_id), note, grade_it->get<int>(), std::move(comment));
    return {200, json{{"id", entry.id}, {"entry", feedback_to_json(entry)}}};
  } catch (const std::exception& e) {
    return error_response(e);
  }
}

Response InferenceService::health() const {
  auto ckpt = current();
  json out{{"status", ckpt ? "ok" : "no_model"}, {"model_loaded", ckpt != nullptr}};
  if (ckpt) {
    const auto& c = ckpt->model.config;
    out["model_version"] = model_version(*ckpt);
    out["model"] = model_config_to_json(c);
    out["explanations_available"] =
        c.kind == model::ModelKind::dam && c.pooling == model::PoolingStrategy::attention;
    out["layout"] = text::layout_to_json(ckpt->metadata.layout);
    out["max_length"] = ckpt->metadata.max_length;
    out["created_at"] = ckpt->metadata.created_at;
  } else {
    out["layout"] = text::layout_to_json(text::default_layout());
  }
  return {200, out};
}

}  // namespace dam::service
