#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace magshell {

/// Raised for malformed or unknown configuration input. The harness maps it to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Plain-text key=value configuration. Lines starting with '#' and blank lines are
/// ignored; whitespace around keys and values is trimmed. Keys are unique.
class Config {
public:
    Config() = default;

    static Config parse_text(const std::string& text);
    static Config load_file(const std::string& path);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::string require_string(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    /// Comma-separated list of doubles.
    std::vector<double> get_double_list(const std::string& key) const;

    /// Rejects any key not in `known` with a ConfigError naming the offender.
    void validate_keys(const std::set<std::string>& known) const;

    /// FNV-1a hash of the canonicalized (sorted key=value) content; stamped into CSV output.
    std::uint64_t content_hash() const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

} // namespace magshell
