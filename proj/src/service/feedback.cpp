#include "dam/service/feedback.hpp"

#include <cstdio>
#include <fstream>

#include "dam/errors.hpp"
#include "dam/service/checkpoint.hpp"

namespace dam::service {

using nlohmann::json;

json feedback_to_json(const FeedbackEntry& e) {
  json j{{"id", e.id},
         {"record_id", e.record_id},
         {"note_hash", e.note_hash},
         {"grade", e.grade},
         {"timestamp", e.timestamp}};
  j["comment"] = e.comment ? json(*e.comment) : json(nullptr);
  return j;
}

FeedbackEntry feedback_from_json(const json& j) {
  try {
    FeedbackEntry e;
    e.id = j.at("id").get<std::uint64_t>();
    e.record_id = j.at("record_id").get<std::string>();
    e.note_hash = j.at("note_hash").get<std::string>();
    e.grade = j.at("grade").get<int>();
    e.timestamp = j.at("timestamp").get<std::string>();
    if (auto it = j.find("comment"); it != j.end() && !it->is_null()) {
      e.comment = it->get<std::string>();
    }
    return e;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("malformed feedback entry: ") + ex.what());
  }
}

std::string note_hash(std::string_view note) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : note) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FeedbackStore::FeedbackStore(std::filesystem::path path) : path_(std::move(path)) {
  for (const auto& e : read_all()) last_id_ = std::max(last_id_, e.id);
}

std::vector<FeedbackEntry> FeedbackStore::read_all() const {
  std::vector<FeedbackEntry> out;
  std::ifstream in(path_);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(feedback_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("feedback store line is not JSON: ") + e.what());
    }
  }
  return out;
}

FeedbackEntry FeedbackStore::append(std::string record_id, std::string_view note, int grade,
                                    std::optional<std::string> comment) {
  if (grade < 1 || grade > 5) {
    throw ValidationError("grade", "grade must be an integer in 1..5, got " + std::to_string(grade));
  }
  FeedbackEntry e;
  e.record_id = std::move(record_id);
  e.note_hash = note_hash(note);
  e.grade = grade;
  e.comment = std::move(comment);
  e.timestamp = utc_timestamp();

  std::lock_guard lock(mu_);
  e.id = last_id_ + 1;
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot open feedback store '" + path_.string() + "'");
  out << feedback_to_json(e).dump() << '\n';
  out.flush();
  if (!out) throw IoError("failed to append to feedback store '" + path_.string() + "'");
  last_id_ = e.id;
  return e;
}

}  // namespace dam::service
