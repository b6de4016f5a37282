#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "dam/model/config.hpp"
#include "dam/service/checkpoint.hpp"
#include "dam/text/record.hpp"
#include "dam/training/metrics.hpp"
#include "dam/training/trainer.hpp"

namespace dam::service {

struct PipelineOptions {
  model::ModelConfig model;  // vocab_size and structured_dim are filled in from the data
  training::TrainConfig train;
  std::size_t min_frequency = 2;
  std::size_t max_length = text::kDefaultMaxLength;
  text::NoteFormat note_format;
};

// Throws MissingLabelError naming the first record without an outcome.
std::vector<training::Example> make_examples(const std::vector<text::PatientRecord>& records,
                                             const CheckpointMetadata& meta, model::Task task);

struct PipelineResult {
  Checkpoint checkpoint;
  std::vector<training::EpochRecord> history;
  std::size_t best_epoch = 0;
};

// Builds the vocabulary from `train_records`, trains, and packages a checkpoint.
PipelineResult train_pipeline(const PipelineOptions& options,
                              const std::vector<text::PatientRecord>& train_records,
                              const std::vector<text::PatientRecord>& validation_records,
                              const training::EpochCallback& on_epoch = {});

training::MetricsReport evaluate_checkpoint(const Checkpoint& ckpt,
                                            const std::vector<text::PatientRecord>& records);

nlohmann::json metrics_to_json(const training::MetricsReport& r);
nlohmann::json epoch_to_json(const training::EpochRecord& e);
nlohmann::json train_config_to_json(const training::TrainConfig& c);

}  // namespace dam::service
