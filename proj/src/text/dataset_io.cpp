#include "dam/text/dataset_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "dam/errors.hpp"

namespace dam::text {

using nlohmann::json;

namespace {

std::string note_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) throw ParseError(std::string("field '") + key + "' must be a string", key);
  return it->get<std::string>();
}

}  // namespace

PatientRecord record_from_json(const json& j, const std::string& fallback_id) {
  if (!j.is_object()) throw ParseError("record must be a JSON object", "record");
  PatientRecord r;
  if (auto it = j.find("id"); it != j.end() && !it->is_null()) {
    if (it->is_string()) {
      r.id = it->get<std::string>();
    } else if (it->is_number_integer()) {
      r.id = std::to_string(it->get<long long>());
    } else {
      throw ParseError("field 'id' must be a string or integer", "id");
    }
  } else {
    r.id = fallback_id;
  }
  r.note_cc = note_field(j, "note_cc");
  r.note_pmh = note_field(j, "note_pmh");
  r.note_meds = note_field(j, "note_meds");
  r.note_rn = note_field(j, "note_rn");

  if (auto it = j.find("structured"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw ParseError("field 'structured' must be an object", "structured");
    for (const auto& [key, value] : it->items()) {
      if (value.is_null()) {
        r.structured[key] = std::monostate{};
      } else if (value.is_number()) {
        r.structured[key] = value.get<double>();
      } else if (value.is_string()) {
        r.structured[key] = value.get<std::string>();
      } else {
        throw ParseError("field 'structured." + key + "' must be a string, number or null",
                         "structured." + key);
      }
    }
  }

  if (auto it = j.find("outcome"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw ParseError("field 'outcome' must be an integer or null", "outcome");
    const auto v = it->get<long long>();
    if (v < 0 || v > 5) throw ParseError("field 'outcome' must be in 0..5", "outcome");
    r.outcome = static_cast<int>(v);
  }
  return r;
}

json record_to_json(const PatientRecord& r) {
  json structured = json::object();
  for (const auto& [key, value] : r.structured) {
    if (std::holds_alternative<std::monostate>(value)) {
      structured[key] = nullptr;
    } else if (const auto* d = std::get_if<double>(&value)) {
      structured[key] = *d;
    } else {
      structured[key] = std::get<std::string>(value);
    }
  }
  json j;
  j["id"] = r.id;
  j["note_cc"] = r.note_cc;
  j["note_pmh"] = r.note_pmh;
  j["note_meds"] = r.note_meds;
  j["note_rn"] = r.note_rn;
  j["structured"] = std::move(structured);
  j["outcome"] = r.outcome ? json(*r.outcome) : json(nullptr);
  return j;
}

std::vector<PatientRecord> read_dataset(std::istream& in) {
  std::vector<PatientRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      records.push_back(record_from_json(j, std::to_string(line_no)));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.field());
    }
  }
  return records;
}

std::vector<PatientRecord> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const std::vector<PatientRecord>& records) {
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

void write_dataset(const std::filesystem::path& path, const std::vector<PatientRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write dataset '" + path.string() + "'");
  write_dataset(out, records);
  if (!out) throw IoError("failed writing dataset '" + path.string() + "'");
}

json layout_to_json(const StructuredLayout& layout) {
  json fields = json::array();
  for (std::size_t i = 0; i < layout.fields().size(); ++i) {
    const auto& f = layout.fields()[i];
    json jf;
    jf["name"] = f.name;
    jf["offset"] = layout.span(i).offset;
    jf["width"] = layout.span(i).width;
    if (f.kind == FieldKind::numeric) {
      jf["kind"] = "numeric";
      jf["boundaries"] = f.boundaries;
      jf["bin_labels"] = f.bin_labels;
    } else {
      jf["kind"] = "categorical";
      jf["categories"] = f.categories;
      jf["has_other"] = f.has_other;
    }
    fields.push_back(std::move(jf));
  }
  return json{{"dimension", layout.dimension()}, {"fields", std::move(fields)}};
}

StructuredLayout layout_from_json(const json& j) {
  try {
    std::vector<FieldSpec> fields;
    for (const auto& jf : j.at("fields")) {
      FieldSpec f;
      f.name = jf.at("name").get<std::string>();
      const auto kind = jf.at("kind").get<std::string>();
      if (kind == "numeric") {
        f.kind = FieldKind::numeric;
        f.has_other = false;
        f.boundaries = jf.at("boundaries").get<std::vector<double>>();
        f.bin_labels = jf.value("bin_labels", std::vector<std::string>{});
      } else if (kind == "categorical") {
        f.kind = FieldKind::categorical;
        f.categories = jf.at("categories").get<std::vector<std::string>>();
        f.has_other = jf.value("has_other", true);
      } else {
        throw ParseError("unknown field kind '" + kind + "'");
      }
      fields.push_back(std::move(f));
    }
    return StructuredLayout(std::move(fields));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed layout: ") + e.what());
  }
}

json vocabulary_to_json(const Vocabulary& vocab) {
  return json{{"min_frequency", vocab.min_frequency()}, {"tokens", vocab.tokens()}};
}

Vocabulary vocabulary_from_json(const json& j) {
  try {
    return Vocabulary::from_tokens(j.at("tokens").get<std::vector<std::string>>(),
                                   j.at("min_frequency").get<std::size_t>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed vocabulary: ") + e.what());
  }
}

}  // namespace dam::text
