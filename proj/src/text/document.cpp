#include "dam/text/document.hpp"

#include <algorithm>

#include "dam/errors.hpp"
#include "dam/text/record.hpp"

namespace dam::text {

Document pad_or_crop(std::span<const TokenId> ids, std::size_t max_length) {
  if (max_length < 1) throw ArgumentError("document length L must be at least 1");
  Document doc;
  doc.token_ids.assign(max_length, kPadId);
  if (ids.empty()) {
    doc.token_ids[0] = kOovId;
    doc.effective_length = 1;
    return doc;
  }
  doc.effective_length = std::min(ids.size(), max_length);
  std::copy_n(ids.begin(), doc.effective_length, doc.token_ids.begin());
  return doc;
}

Document encode_document(std::span<const std::string> tokens, const Vocabulary& vocab,
                         std::size_t max_length) {
  std::vector<TokenId> ids;
  ids.reserve(std::min(tokens.size(), max_length));
  for (std::size_t i = 0; i < tokens.size() && i < max_length; ++i) ids.push_back(vocab.id(tokens[i]));
  return pad_or_crop(ids, max_length);
}

std::vector<std::string> decode_document(const Document& doc, const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(doc.effective_length);
  for (TokenId id : doc.active()) out.push_back(vocab.token(id));
  return out;
}

std::string join_note(const PatientRecord& record, const NoteFormat& format) {
  struct Section {
    const char* marker;
    const std::string* body;
  };
  const Section sections[] = {{"[cc]", &record.note_cc},
                              {"[pmh]", &record.note_pmh},
                              {"[meds]", &record.note_meds},
                              {"[rn]", &record.note_rn}};
  std::string out;
  for (const auto& s : sections) {
    if (s.body->find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (!out.empty()) out += ' ';
    if (format.section_markers) {
      out += s.marker;
      out += ' ';
    }
    out += *s.body;
  }
  return out;
}

}  // namespace dam::text
