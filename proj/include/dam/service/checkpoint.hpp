#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>
#include "dam/model/config.hpp"
#include "dam/model/parameters.hpp"
#include "dam/text/record.hpp"
#include "dam/text/structured.hpp"
#include "dam/text/vocabulary.hpp"

namespace dam::service {

inline constexpr char kCheckpointMagic[8] = {'D', 'A', 'M', 'C', 'K', 'P', 'T', '\0'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointMetadata {
  text::Vocabulary vocabulary;
  text::StructuredLayout layout;
  text::NoteFormat note_format;
  std::size_t max_length = 0;
  nlohmann::json train_config;  // flat object of the training knobs
  std::string train_fingerprint;
  std::string created_at;  // ISO 8601 UTC
};

struct Checkpoint {
  model::ModelParameters model;
  CheckpointMetadata metadata;
  // Hex CRC-32 of the file body; filled in by save and load.
  std::string checksum;
};

nlohmann::json model_config_to_json(const model::ModelConfig& c);
model::ModelConfig model_config_from_json(const nlohmann::json& j);

// Layout: magic, u32 version, u64 metadata length, metadata JSON, u32 tensor
// count, then per tensor (u32 name length, name, u64 rows, u64 cols, rows*cols
// little-endian doubles), then a u32 CRC-32 of everything before it.
std::string serialize_checkpoint(Checkpoint& ckpt);
// Rejects bad magic and truncation with IntegrityError; the version is checked
// before any tensor is read.
Checkpoint deserialize_checkpoint(std::string_view bytes);

void save_checkpoint(Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Throws TaskMismatchError.
void require_task(const Checkpoint& ckpt, model::Task task);

std::string utc_timestamp();
std::string crc32_hex(std::string_view bytes);

}  // namespace dam::service
