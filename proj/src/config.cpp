#include "peb/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace peb {

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

ConfigFile parse_config_text(const std::string& text, const std::vector<std::string>& known)
{
    ConfigFile out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (out.values.count(key))
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        if (std::find(known.begin(), known.end(), key) == known.end())
            out.warnings.push_back("unknown key '" + key + "' ignored");
        else
            out.values[key] = value;
    }
    return out;
}

ConfigFile parse_config(const std::string& path, const std::vector<std::string>& known)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), known);
}

double parse_number(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    double x = 0.0;
    const char* b = t.data();
    const char* e = t.data() + t.size();
    if (!t.empty() && *b == '+') ++b;
    const auto res = std::from_chars(b, e, x);
    if (t.empty() || res.ec != std::errc() || res.ptr != e)
        throw ConfigError("malformed number for '" + key + "': '" + text + "'");
    return x;
}

bool Scenario::has(const std::string& key) const { return values.count(key) != 0; }

const std::string& Scenario::str(const std::string& key) const
{
    const auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing parameter '" + key + "'");
    return it->second;
}

double Scenario::number(const std::string& key) const { return parse_number(key, str(key)); }

long Scenario::integer(const std::string& key) const
{
    const double x = number(key);
    if (x != static_cast<double>(static_cast<long>(x)))
        throw ConfigError("parameter '" + key + "' must be an integer");
    return static_cast<long>(x);
}

std::uint64_t Scenario::seed(const std::string& key) const
{
    const std::string& s = str(key);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("malformed seed for '" + key + "': '" + s + "'");
    return v;
}

std::vector<double> Scenario::list(const std::string& key) const
{
    std::vector<double> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(key, item));
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

Scenario resolve(const std::string& command, const std::map<std::string, std::string>& defaults,
                 const ConfigFile& file, const std::map<std::string, std::string>& flags)
{
    Scenario s;
    s.command = command;
    s.values = defaults;
    for (const auto& [k, v] : file.values) s.values[k] = v;
    for (const auto& [k, v] : flags) s.values[k] = v;
    return s;
}

}  // namespace peb
