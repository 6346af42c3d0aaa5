#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace diar {

struct ConfigEntry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

// INI-style configuration: [section] headers, "key = value" lines, '#'
// comments, UTF-8. Keys are unique per section. Typed getters mark entries
// consumed so loaders can reject unknown keys afterwards.
class ConfigFile {
public:
    static ConfigFile parse(std::istream& in);
    static ConfigFile parse_text(const std::string& text);
    static ConfigFile parse_file(const std::string& path);

    const std::vector<ConfigEntry>& entries() const { return entries_; }

    // Directory of the source file ("" when parsed from memory); loaders
    // resolve relative paths against it.
    const std::string& directory() const { return directory_; }

    std::optional<std::string> get(const std::string& section, const std::string& key);
    std::string require(const std::string& section, const std::string& key);
    std::optional<std::int64_t> get_int(const std::string& section, const std::string& key);
    std::optional<double> get_real(const std::string& section, const std::string& key);
    std::optional<bool> get_bool(const std::string& section, const std::string& key);

    // Entries of a section in file order, marked consumed.
    std::vector<ConfigEntry> take_section(const std::string& section);

    bool has_section(const std::string& section) const;

    // Throws ConfigError naming the first entry never consumed by a getter.
    void reject_unconsumed() const;

private:
    std::vector<ConfigEntry> entries_;
    std::vector<bool> consumed_;
    std::string directory_;
};

std::int64_t parse_config_int(const ConfigEntry& entry);
double parse_config_real(const ConfigEntry& entry);
bool parse_config_bool(const ConfigEntry& entry);

}  // namespace diar
