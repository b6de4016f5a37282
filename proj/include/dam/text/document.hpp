#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dam/text/vocabulary.hpp"

namespace dam::text {

inline constexpr std::size_t kDefaultMaxLength = 128;

/// Fixed-length token-id sequence. Positions >= effective_length are PAD.
struct Document {
  std::vector<TokenId> token_ids;
  std::size_t effective_length = 0;
  std::string source_record_id;

  std::span<const TokenId> active() const noexcept {
    return {token_ids.data(), effective_length};
  }
  friend bool operator==(const Document&, const Document&) = default;
};

// Right-pads with PAD or crops to `max_length`. An empty input becomes a single
// OOV followed by PAD so every document has at least one active position.
Document pad_or_crop(std::span<const TokenId> ids, std::size_t max_length);

Document encode_document(std::span<const std::string> tokens, const Vocabulary& vocab,
                         std::size_t max_length);

// Tokens at the active positions.
std::vector<std::string> decode_document(const Document& doc, const Vocabulary& vocab);

}  // namespace dam::text
