#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dam::service {

struct FeedbackEntry {
  std::uint64_t id = 0;
  std::string record_id;
  std::string note_hash;
  int grade = 0;  // 1..5
  std::optional<std::string> comment;
  std::string timestamp;

  friend bool operator==(const FeedbackEntry&, const FeedbackEntry&) = default;
};

nlohmann::json feedback_to_json(const FeedbackEntry& e);
FeedbackEntry feedback_from_json(const nlohmann::json& j);

// 64-bit FNV-1a, hex.
std::string note_hash(std::string_view note);

/// Append-only JSONL store. Ids continue from the largest id already on disk.
/// Appends are serialised; lines are never rewritten.
class FeedbackStore {
 public:
  explicit FeedbackStore(std::filesystem::path path);

  // Throws ValidationError("grade") outside 1..5.
  FeedbackEntry append(std::string record_id, std::string_view note, int grade,
                       std::optional<std::string> comment);

  std::vector<FeedbackEntry> read_all() const;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::uint64_t last_id_ = 0;
};

}  // namespace dam::service
