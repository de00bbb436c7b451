#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tomoprior {

/// One "key = value" line. The format is line-oriented: '#' starts a
/// comment, blank lines are skipped, keys may repeat (consumers decide
/// whether repetition is a list or an error).
struct KeyValue {
    int line = 0;
    std::string key;
    std::string value;
};

std::vector<KeyValue> parse_key_value_file(const std::filesystem::path& path);
std::vector<KeyValue> parse_key_value_text(const std::string& text, const std::string& origin);

/// Typed accessors; throw ConfigError naming the file, line and key on a
/// parse failure.
long parse_integer(const KeyValue& kv);
double parse_real(const KeyValue& kv);
std::uint64_t parse_unsigned(const KeyValue& kv);

} // namespace tomoprior
