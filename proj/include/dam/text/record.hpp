#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

namespace dam::text {

// null, numeric, or categorical value of one structured field.
using FieldValue = std::variant<std::monostate, double, std::string>;

/// One triage encounter as read from the dataset file.
struct PatientRecord {
  std::string id;
  std::string note_cc;
  std::string note_pmh;
  std::string note_meds;
  std::string note_rn;
  std::map<std::string, FieldValue> structured;
  std::optional<int> outcome;  // resource category 0..5; absent for inference

  friend bool operator==(const PatientRecord&, const PatientRecord&) = default;
};

struct NoteFormat {
  bool section_markers = true;
  friend bool operator==(const NoteFormat&, const NoteFormat&) = default;
};

// Concatenates the four sections. With markers on, each nonempty section is
// preceded by its marker ("[cc]", "[pmh]", "[meds]", "[rn]").
std::string join_note(const PatientRecord& record, const NoteFormat& format = {});

// Outcome 3, 4 or 5 is the positive class.
inline int binary_label(int outcome) { return outcome >= 3 ? 1 : 0; }

}  // namespace dam::text
