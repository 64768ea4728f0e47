#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace peb {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConfigFile {
    std::map<std::string, std::string> values;
    std::vector<std::string> warnings;  // unknown keys
};

// key = value lines, '#' starts a comment, blank lines ignored. Duplicate keys throw.
ConfigFile parse_config_text(const std::string& text, const std::vector<std::string>& known);
ConfigFile parse_config(const std::string& path, const std::vector<std::string>& known);

// Resolved parameters of one subcommand; typed access validates and names the key on failure.
class Scenario {
public:
    std::string command;
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const;
    const std::string& str(const std::string& key) const;
    double number(const std::string& key) const;
    long integer(const std::string& key) const;
    std::uint64_t seed(const std::string& key) const;
    std::vector<double> list(const std::string& key) const;
};

// defaults, then file, then flags: later sources win.
Scenario resolve(const std::string& command, const std::map<std::string, std::string>& defaults,
                 const ConfigFile& file, const std::map<std::string, std::string>& flags);

double parse_number(const std::string& key, const std::string& text);

}  // namespace peb
