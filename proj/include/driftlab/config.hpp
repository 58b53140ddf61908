#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace driftlab {

// Line-oriented "key = value" text. '#' starts a comment, keys may repeat
// (e.g. one `term` line per operator coefficient) and keep their line
// numbers for error messages.
struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

class ConfigText {
public:
    static ConfigText parse(const std::string& text);
    static ConfigText load(const std::string& path);

    const std::vector<ConfigEntry>& entries() const { return entries_; }
    const std::string& source() const { return source_; }

    bool has(const std::string& key) const { return find(key) != nullptr; }
    // Last occurrence wins for single-valued keys.
    const ConfigEntry* find(const std::string& key) const;
    std::vector<const ConfigEntry*> all(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;

    // Rejects keys outside `allowed` (prefix match when an entry ends in '.').
    void check_known(const std::set<std::string>& allowed) const;

private:
    std::vector<ConfigEntry> entries_;
    std::string source_;
};

// Numbers separated by commas and/or whitespace. Throws ConfigError(line).
std::vector<double> parse_number_list(const std::string& s, int line);
double parse_number(const std::string& s, int line);

// FNV-1a 64-bit hash, printed as 16 hex digits.
std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

}  // namespace driftlab
