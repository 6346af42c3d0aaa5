#include "diar/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diar/error.hpp"

namespace diar {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string entry_context(const ConfigEntry& entry) {
    return "line " + std::to_string(entry.line) + ": [" + entry.section + "] " + entry.key;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in) {
    ConfigFile file;
    std::string raw;
    std::string section;
    int line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        std::string line = raw;
        const auto comment = line.find('#');
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError("line " + std::to_string(line_number) +
                                  ": malformed section header: " + trim(raw));
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError("line " + std::to_string(line_number) + ": empty section name");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_number) +
                              ": expected 'key = value': " + line);
        }
        ConfigEntry entry;
        entry.section = section;
        entry.key = trim(line.substr(0, eq));
        entry.value = trim(line.substr(eq + 1));
        entry.line = line_number;
        if (section.empty()) {
            throw ConfigError("line " + std::to_string(line_number) +
                              ": entry before any [section]");
        }
        if (entry.key.empty()) {
            throw ConfigError("line " + std::to_string(line_number) + ": empty key");
        }
        for (const ConfigEntry& existing : file.entries_) {
            if (existing.section == entry.section && existing.key == entry.key) {
                throw ConfigError("line " + std::to_string(line_number) + ": duplicate key '" +
                                  entry.key + "' in section [" + entry.section +
                                  "] (first on line " + std::to_string(existing.line) + ")");
            }
        }
        file.entries_.push_back(std::move(entry));
    }
    file.consumed_.assign(file.entries_.size(), false);
    return file;
}

ConfigFile ConfigFile::parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    try {
        ConfigFile file = parse(in);
        file.directory_ = std::filesystem::path(path).parent_path().string();
        return file;
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::optional<std::string> ConfigFile::get(const std::string& section, const std::string& key) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].section == section && entries_[i].key == key) {
            consumed_[i] = true;
            return entries_[i].value;
        }
    }
    return std::nullopt;
}

std::string ConfigFile::require(const std::string& section, const std::string& key) {
    auto value = get(section, key);
    if (!value) {
        throw ConfigError("missing required key '" + key + "' in section [" + section + "]");
    }
    return *value;
}

std::optional<std::int64_t> ConfigFile::get_int(const std::string& section,
                                                const std::string& key) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].section == section && entries_[i].key == key) {
            consumed_[i] = true;
            return parse_config_int(entries_[i]);
        }
    }
    return std::nullopt;
}

std::optional<double> ConfigFile::get_real(const std::string& section, const std::string& key) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].section == section && entries_[i].key == key) {
            consumed_[i] = true;
            return parse_config_real(entries_[i]);
        }
    }
    return std::nullopt;
}

std::optional<bool> ConfigFile::get_bool(const std::string& section, const std::string& key) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].section == section && entries_[i].key == key) {
            consumed_[i] = true;
            return parse_config_bool(entries_[i]);
        }
    }
    return std::nullopt;
}

std::vector<ConfigEntry> ConfigFile::take_section(const std::string& section) {
    std::vector<ConfigEntry> out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].section == section) {
            consumed_[i] = true;
            out.push_back(entries_[i]);
        }
    }
    return out;
}

bool ConfigFile::has_section(const std::string& section) const {
    for (const ConfigEntry& entry : entries_) {
        if (entry.section == section) {
            return true;
        }
    }
    return false;
}

void ConfigFile::reject_unconsumed() const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!consumed_[i]) {
            throw ConfigError("unknown key: " + entry_context(entries_[i]));
        }
    }
}

std::int64_t parse_config_int(const ConfigEntry& entry) {
    std::int64_t value = 0;
    const char* begin = entry.value.data();
    const char* end = begin + entry.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || entry.value.empty()) {
        throw ConfigError(entry_context(entry) + ": not an integer: '" + entry.value + "'");
    }
    return value;
}

double parse_config_real(const ConfigEntry& entry) {
    double value = 0.0;
    const char* begin = entry.value.data();
    const char* end = begin + entry.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || entry.value.empty()) {
        throw ConfigError(entry_context(entry) + ": not a number: '" + entry.value + "'");
    }
    return value;
}

bool parse_config_bool(const ConfigEntry& entry) {
    if (entry.value == "true") {
        return true;
    }
    if (entry.value == "false") {
        return false;
    }
    throw ConfigError(entry_context(entry) + ": expected 'true' or 'false', got '" + entry.value +
                      "'");
}

}  // namespace diar
