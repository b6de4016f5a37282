#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>

namespace dam::service {

// Flat key=value text. '#' starts a comment line; keys and values are trimmed.
using ConfigMap = std::map<std::string, std::string>;

// Throws ParseError naming the line for a missing '=' or a repeated key.
ConfigMap parse_config(std::istream& in);
ConfigMap read_config_file(const std::filesystem::path& path);
std::string format_config(const ConfigMap& config);

}  // namespace dam::service
