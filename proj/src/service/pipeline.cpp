#include "dam/service/pipeline.hpp"

#include "dam/baselines/baselines.hpp"
#include "dam/errors.hpp"
#include "dam/service/inference.hpp"
#include "dam/text/dataset_io.hpp"
#include "dam/text/tokenizer.hpp"
#include "dam/text/vocabulary.hpp"

namespace dam::service {

using nlohmann::json;

std::vector<training::Example> make_examples(const std::vector<text::PatientRecord>& records,
                                             const CheckpointMetadata& meta, model::Task task) {
  std::vector<training::Example> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (!r.outcome) throw MissingLabelError("record '" + r.id + "' has no outcome label");
    Featurized f = featurize(r, meta);
    training::Example e;
    e.document = std::move(f.document);
    e.structured = std::move(f.structured);
    e.outcome = *r.outcome;
    e.label = task == model::Task::binary ? text::binary_label(*r.outcome) : *r.outcome;
    out.push_back(std::move(e));
  }
  return out;
}

json train_config_to_json(const training::TrainConfig& c) {
  return json{{"learning_rate", c.learning_rate}, {"batch_size", c.batch_size},
              {"max_epochs", c.max_epochs},       {"patience", c.patience},
              {"seed", c.seed}};
}

PipelineResult train_pipeline(const PipelineOptions& options,
                              const std::vector<text::PatientRecord>& train_records,
                              const std::vector<text::PatientRecord>& validation_records,
                              const training::EpochCallback& on_epoch) {
  CheckpointMetadata meta;
  meta.layout = text::default_layout();
  meta.note_format = options.note_format;
  meta.max_length = options.max_length;
  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(train_records.size());
  for (const auto& r : train_records) {
    corpus.push_back(text::tokenize(text::join_note(r, options.note_format)));
  }
  meta.vocabulary = text::build_vocabulary(corpus, options.min_frequency);

  model::ModelConfig config = options.model;
  config.vocab_size = meta.vocabulary.size();
  config.structured_dim = meta.layout.dimension();

  const auto train_set = make_examples(train_records, meta, config.task);
  const auto val_set = make_examples(validation_records, meta, config.task);

  auto result = training::train(options.train, train_set, val_set,
                                baselines::initialize_parameters(config, options.train.seed),
                                baselines::graph_builder_for(config), on_epoch);

  meta.train_config = train_config_to_json(options.train);
  meta.train_config["min_frequency"] = options.min_frequency;
  meta.train_config["train_records"] = train_records.size();
  meta.train_config["validation_records"] = validation_records.size();
  std::string fingerprint_input = meta.train_config.dump();
  for (const auto& r : train_records) fingerprint_input += text::record_to_json(r).dump();
  meta.train_fingerprint = crc32_hex(fingerprint_input);
  meta.created_at = utc_timestamp();

  PipelineResult out;
  out.checkpoint.model = std::move(result.model);
  out.checkpoint.metadata = std::move(meta);
  out.history = std::move(result.history);
  out.best_epoch = result.best_epoch;
  return out;
}

training::MetricsReport evaluate_checkpoint(const Checkpoint& ckpt,
                                            const std::vector<text::PatientRecord>& records) {
  const auto& config = ckpt.model.config;
  const auto examples = make_examples(records, ckpt.metadata, config.task);
  const auto predictions =
      training::predict_all(baselines::graph_builder_for(config), ckpt.model, examples);
  std::vector<int> labels;
  labels.reserve(examples.size());
  for (const auto& e : examples) labels.push_back(e.label);
  return training::evaluate_predictions(predictions, labels, config.task);
}

json metrics_to_json(const training::MetricsReport& r) {
  json j{{"task", model::to_string(r.task)},
         {"count", r.count},
         {"accuracy", r.accuracy},
         {"auc", r.auc_defined ? json(r.auc) : json(nullptr)},
         {"skipped_classes", r.skipped_classes},
         {"confusion", r.confusion}};
  if (r.has_grouped) {
    json counts = json::array();
    for (const auto& row : r.grouped.counts) counts.push_back(row);
    j["grouped"] = {{"levels", training::kAcuityLevels},
                    {"confusion", counts},
                    {"accuracy", r.grouped.accuracy}};
  }
  return j;
}

json epoch_to_json(const training::EpochRecord& e) {
  return json{{"epoch", e.epoch},
              {"train_loss", e.train_loss},
              {"val_loss", e.val_loss},
              {"val_accuracy", e.val_accuracy},
              {"val_auc", e.val_auc ? json(*e.val_auc) : json(nullptr)}};
}

}  // namespace dam::service
