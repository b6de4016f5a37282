#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dam::text {

using TokenId = std::size_t;

inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kOovId = 1;
inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kOovToken = "<oov>";

/// Token <-> id mapping. Ids are contiguous; 0 is PAD, 1 is OOV, corpus tokens
/// start at 2.
class Vocabulary {
 public:
  // Only PAD and OOV.
  Vocabulary();
  // Rebuilds from an id-ordered token list (index 0 and 1 must be PAD and OOV).
  static Vocabulary from_tokens(std::vector<std::string> id_to_token, std::size_t min_frequency);

  std::size_t size() const noexcept { return id_to_token_.size(); }
  std::size_t min_frequency() const noexcept { return min_frequency_; }
  TokenId id(std::string_view token) const;  // OOV when unknown
  bool contains(std::string_view token) const;
  const std::string& token(TokenId id) const;
  const std::vector<std::string>& tokens() const noexcept { return id_to_token_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.id_to_token_ == b.id_to_token_ && a.min_frequency_ == b.min_frequency_;
  }

 private:
  friend Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>&, std::size_t);
  void push(std::string token);

  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, TokenId> token_to_id_;
  std::size_t min_frequency_ = 1;
};

// Ids are assigned by descending frequency, ties broken lexicographically.
// Throws BuildError on an empty corpus and ArgumentError when min_frequency < 1.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& corpus,
                            std::size_t min_frequency);

}  // namespace dam::text
