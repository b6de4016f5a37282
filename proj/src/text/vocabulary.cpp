#include "dam/text/vocabulary.hpp"

#include <algorithm>
#include <map>

#include "dam/errors.hpp"

namespace dam::text {

Vocabulary::Vocabulary() {
  push(std::string(kPadToken));
  push(std::string(kOovToken));
}

void Vocabulary::push(std::string token) {
  token_to_id_.emplace(token, id_to_token_.size());
  id_to_token_.push_back(std::move(token));
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> id_to_token,
                                   std::size_t min_frequency) {
  if (id_to_token.size() < 2 || id_to_token[0] != kPadToken || id_to_token[1] != kOovToken) {
    throw ParseError("vocabulary must start with " + std::string(kPadToken) + " and " +
                     std::string(kOovToken));
  }
  Vocabulary v;
  v.min_frequency_ = min_frequency;
  for (std::size_t i = 2; i < id_to_token.size(); ++i) {
    if (v.token_to_id_.contains(id_to_token[i])) {
      throw ParseError("duplicate vocabulary token '" + id_to_token[i] + "'");
    }
    v.push(std::move(id_to_token[i]));
  }
  return v;
}

TokenId Vocabulary::id(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? kOovId : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
  return token_to_id_.contains(std::string(token));
}

const std::string& Vocabulary::token(TokenId id) const {
  if (id >= id_to_token_.size()) {
    throw IndexError("token id " + std::to_string(id) + " out of range for vocabulary of size " +
                     std::to_string(id_to_token_.size()));
  }
  return id_to_token_[id];
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& corpus,
                            std::size_t min_frequency) {
  if (min_frequency < 1) throw ArgumentError("min_frequency must be at least 1");
  std::map<std::string, std::size_t> counts;
  for (const auto& doc : corpus)
    for (const auto& tok : doc) ++counts[tok];
  if (counts.empty()) throw BuildError("cannot build a vocabulary from an empty corpus");

  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [tok, n] : counts)
    if (n >= min_frequency && tok != kPadToken && tok != kOovToken) kept.emplace_back(tok, n);
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  Vocabulary v;
  v.min_frequency_ = min_frequency;
  for (auto& [tok, n] : kept) v.push(tok);
  return v;
}

}  // namespace dam::text
