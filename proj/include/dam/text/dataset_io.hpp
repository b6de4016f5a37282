#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dam/text/record.hpp"
#include "dam/text/structured.hpp"
#include "dam/text/vocabulary.hpp"

// Line-delimited dataset format: one JSON object per line with keys
// note_cc, note_pmh, note_meds, note_rn (strings), structured (flat object of
// field -> string | number | null), outcome (integer 0..5 or null). An optional
// "id" key names the record; otherwise the 1-based line number is used.
namespace dam::text {

// Throws ParseError naming the offending key.
PatientRecord record_from_json(const nlohmann::json& j, const std::string& fallback_id = "");
nlohmann::json record_to_json(const PatientRecord& r);

std::vector<PatientRecord> read_dataset(std::istream& in);
std::vector<PatientRecord> read_dataset(const std::filesystem::path& path);
void write_dataset(std::ostream& out, const std::vector<PatientRecord>& records);
void write_dataset(const std::filesystem::path& path, const std::vector<PatientRecord>& records);

nlohmann::json layout_to_json(const StructuredLayout& layout);
StructuredLayout layout_from_json(const nlohmann::json& j);

nlohmann::json vocabulary_to_json(const Vocabulary& vocab);
Vocabulary vocabulary_from_json(const nlohmann::json& j);

}  // namespace dam::text
