#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace collarml {

// Flat `key = value` configuration with `[section]` headers; a key inside
// a section is addressed as "section.key". `#` and `;` start comments.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { entries_[key] = value; }

    // Throwing accessors (DataError when missing or malformed) ...
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    // ... and defaulted variants.
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Comma-separated list, items trimmed; empty when the key is absent.
    std::vector<std::string> get_list(const std::string& key) const;

    // Every key/value in sorted order, for --print-config.
    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace collarml
