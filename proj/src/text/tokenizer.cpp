#include "dam/text/tokenizer.hpp"

#include <cctype>

namespace dam::text {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

bool is_kept(unsigned char c) { return std::isalnum(c) != 0 || c == '/' || c == '-'; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(static_cast<unsigned char>(text[j]))) ++j;
    std::size_t begin = i, end = j;
    while (begin < end && !is_kept(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && !is_kept(static_cast<unsigned char>(text[end - 1]))) --end;
    if (begin < end) {
      std::string tok(text.substr(begin, end - begin));
      for (char& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      tokens.push_back(std::move(tok));
    }
    i = j;
  }
  return tokens;
}

}  // namespace dam::text
