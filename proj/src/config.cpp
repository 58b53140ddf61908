#include "driftlab/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "driftlab/types.hpp"

namespace driftlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigText ConfigText::parse(const std::string& text) {
    ConfigText c;
    c.source_ = text;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        ConfigEntry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
        if (e.key.empty()) throw ConfigError("empty key", line);
        c.entries_.push_back(std::move(e));
    }
    return c;
}

ConfigText ConfigText::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

const ConfigEntry* ConfigText::find(const std::string& key) const {
    const ConfigEntry* hit = nullptr;
    for (const auto& e : entries_)
        if (e.key == key) hit = &e;
    return hit;
}

std::vector<const ConfigEntry*> ConfigText::all(const std::string& key) const {
    std::vector<const ConfigEntry*> out;
    for (const auto& e : entries_)
        if (e.key == key) out.push_back(&e);
    return out;
}

std::string ConfigText::get_string(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ConfigError("missing required key '" + key + "'");
    return e->value;
}

std::string ConfigText::get_string(const std::string& key, const std::string& fallback) const {
    const ConfigEntry* e = find(key);
    return e ? e->value : fallback;
}

double parse_number(const std::string& s, int line) {
    const std::string t = trim(s);
    if (t.empty()) throw ConfigError("expected a number", line);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE) throw ConfigError("not a number: '" + t + "'", line);
    return v;
}

std::vector<double> parse_number_list(const std::string& s, int line) {
    std::vector<double> out;
    std::string tok;
    auto flush = [&] {
        if (!tok.empty()) out.push_back(parse_number(tok, line));
        tok.clear();
    };
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '\t')
            flush();
        else
            tok.push_back(ch);
    }
    flush();
    return out;
}

double ConfigText::get_double(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ConfigError("missing required key '" + key + "'");
    return parse_number(e->value, e->line);
}

double ConfigText::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long ConfigText::get_int(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ConfigError("missing required key '" + key + "'");
    const double v = parse_number(e->value, e->line);
    if (v != static_cast<double>(static_cast<long>(v))) throw ConfigError("'" + key + "' must be an integer", e->line);
    return static_cast<long>(v);
}

long ConfigText::get_int(const std::string& key, long fallback) const { return has(key) ? get_int(key) : fallback; }

std::uint64_t ConfigText::get_u64(const std::string& key, std::uint64_t fallback) const {
    const ConfigEntry* e = find(key);
    if (!e) return fallback;
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(e->value.c_str(), &end, 10);
    if (e->value.empty() || *end != '\0' || errno == ERANGE || e->value[0] == '-')
        throw ConfigError("'" + key + "' must be an unsigned integer", e->line);
    return v;
}

std::vector<double> ConfigText::get_doubles(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ConfigError("missing required key '" + key + "'");
    return parse_number_list(e->value, e->line);
}

std::vector<double> ConfigText::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
    return has(key) ? get_doubles(key) : fallback;
}

void ConfigText::check_known(const std::set<std::string>& allowed) const {
    for (const auto& e : entries_) {
        bool ok = allowed.count(e.key) > 0;
        for (const auto& a : allowed)
            if (!ok && !a.empty() && a.back() == '.' && e.key.rfind(a, 0) == 0) ok = true;
        if (!ok) throw ConfigError("unknown key '" + e.key + "'", e.line);
    }
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace driftlab
