#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bovw {

Config Config::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot open '" + path.string() + "'");
    Config cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#')
            continue;
        const std::size_t eq = line.find('=', start);
        if (eq == std::string::npos)
            throw std::runtime_error("config: missing '=' on line " + std::to_string(line_no));
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw std::runtime_error("config: empty key on line " + std::to_string(line_no));
        cfg.values_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

std::optional<std::string> Config::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        return std::nullopt;
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
}

std::string Config::require_string(const std::string& key) const {
    const auto v = get(key);
    if (!v || v->empty())
        throw std::runtime_error("config: missing required key '" + key + "'");
    return *v;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    if (!v)
        return fallback;
    try {
        std::size_t pos = 0;
        const double d = std::stod(*v, &pos);
        if (pos != v->size())
            throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw std::runtime_error("config: key '" + key + "' is not a number: '" + *v + "'");
    }
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
    const auto v = get(key);
    if (!v)
        return fallback;
    try {
        std::size_t pos = 0;
        const std::int64_t i = std::stoll(*v, &pos);
        if (pos != v->size())
            throw std::invalid_argument("");
        return i;
    } catch (...) {
        throw std::runtime_error("config: key '" + key + "' is not an integer: '" + *v + "'");
    }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto v = get(key);
    if (!v)
        return fallback;
    try {
        std::size_t pos = 0;
        const std::uint64_t i = std::stoull(*v, &pos);
        if (pos != v->size())
            throw std::invalid_argument("");
        return i;
    } catch (...) {
        throw std::runtime_error("config: key '" + key + "' is not an unsigned integer: '" + *v + "'");
    }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto v = get(key);
    if (!v)
        return fallback;
    if (*v == "1" || *v == "true" || *v == "yes" || *v == "on")
        return true;
    if (*v == "0" || *v == "false" || *v == "no" || *v == "off")
        return false;
    throw std::runtime_error("config: key '" + key + "' is not a boolean: '" + *v + "'");
}

std::vector<std::string> Config::get_list(const std::string& key) const {
    std::vector<std::string> out;
    const auto v = get(key);
    if (!v || v->empty())
        return out;
    std::size_t start = 0;
    while (start <= v->size()) {
        std::size_t comma = v->find(',', start);
        if (comma == std::string::npos)
            comma = v->size();
        std::string item = v->substr(start, comma - start);
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a != std::string::npos)
            out.push_back(item.substr(a, b - a + 1));
        start = comma + 1;
    }
    return out;
}

std::vector<std::int64_t> Config::get_int_list(const std::string& key) const {
    std::vector<std::int64_t> out;
    for (const auto& item : get_list(key)) {
        const auto c1 = item.find(':');
        if (c1 != std::string::npos) {
            const auto c2 = item.find(':', c1 + 1);
            if (c2 == std::string::npos)
                throw std::runtime_error("config: range in '" + key + "' needs start:end:step");
            const std::int64_t start = std::stoll(item.substr(0, c1));
            const std::int64_t end = std::stoll(item.substr(c1 + 1, c2 - c1 - 1));
            const std::int64_t step = std::stoll(item.substr(c2 + 1));
            if (step <= 0)
                throw std::runtime_error("config: range step in '" + key + "' must be positive");
            for (std::int64_t v = start; v <= end; v += step)
                out.push_back(v);
            continue;
        }
        out.push_back(std::stoll(item));
    }
    return out;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : get_list(key))
        out.push_back(std::stod(item));
    return out;
}

std::string Config::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0x1f;
        h *= 0x100000001b3ULL;
    };
    for (const auto& [k, v] : values_) {
        mix(k);
        mix(v);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace bovw
