#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dam::text {

// Lowercases, splits on whitespace, and trims each piece of leading/trailing
// characters other than [a-z0-9/-]. Empty pieces are dropped.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace dam::text
