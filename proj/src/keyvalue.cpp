#include "tomoprior/keyvalue.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tomoprior/errors.hpp"

namespace tomoprior {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const KeyValue& kv, const std::string& what) {
    throw ConfigError("line " + std::to_string(kv.line) + ": key '" + kv.key + "': " + what +
                      " (got '" + kv.value + "')");
}

} // namespace

std::vector<KeyValue> parse_key_value_text(const std::string& text, const std::string& origin) {
    std::vector<KeyValue> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        }
        KeyValue kv;
        kv.line = line_no;
        kv.key = trim(line.substr(0, eq));
        kv.value = trim(line.substr(eq + 1));
        if (kv.key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        }
        out.push_back(std::move(kv));
    }
    return out;
}

std::vector<KeyValue> parse_key_value_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_key_value_text(buffer.str(), path.string());
}

long parse_integer(const KeyValue& kv) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(kv.value.c_str(), &end, 10);
    if (errno != 0 || end == kv.value.c_str() || *end != '\0') {
        fail(kv, "expected an integer");
    }
    return v;
}

std::uint64_t parse_unsigned(const KeyValue& kv) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(kv.value.c_str(), &end, 10);
    if (errno != 0 || end == kv.value.c_str() || *end != '\0' ||
        kv.value.find('-') != std::string::npos) {
        fail(kv, "expected a non-negative integer");
    }
    return static_cast<std::uint64_t>(v);
}

double parse_real(const KeyValue& kv) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(kv.value.c_str(), &end);
    if (errno != 0 || end == kv.value.c_str() || *end != '\0') {
        fail(kv, "expected a real number");
    }
    return v;
}

} // namespace tomoprior
