#include "ssfplsim/kvconfig.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ssfplsim/errors.hpp"

namespace ssfplsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

KvFile KvFile::parse_text(const std::string& text, const std::string& path) {
    KvFile kv;
    kv.path_ = path;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    Section* current = nullptr;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw parse_error("unterminated section header", path, lineno);
            Section sec;
            sec.name = trim(t.substr(1, t.size() - 2));
            if (sec.name.empty()) throw parse_error("empty section name", path, lineno);
            kv.sections_.push_back(std::move(sec));
            current = &kv.sections_.back();
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw parse_error("expected key = value", path, lineno);
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw parse_error("empty key", path, lineno);
        if (current) {
            current->values[key] = val;
        } else {
            kv.globals_[key] = val;
        }
    }
    return kv;
}

KvFile KvFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config file", path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

bool KvFile::has(const Section* sec, const std::string& key) const {
    if (sec) {
        const auto it = sec->values.find(key);
        if (it != sec->values.end()) return true;
    }
    return globals_.count(key) > 0;
}

std::string KvFile::get(const Section* sec, const std::string& key) const {
    if (sec) {
        const auto it = sec->values.find(key);
        if (it != sec->values.end()) return it->second;
    }
    const auto it = globals_.find(key);
    if (it == globals_.end())
        throw parse_error("missing config key '" + key + "'", path_);
    return it->second;
}

std::string KvFile::get_or(const Section* sec, const std::string& key,
                           const std::string& fallback) const {
    return has(sec, key) ? get(sec, key) : fallback;
}

double KvFile::get_double(const Section* sec, const std::string& key) const {
    const std::string v = get(sec, key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw parse_error("config key '" + key + "' is not a number: " + v, path_);
    }
}

double KvFile::get_double_or(const Section* sec, const std::string& key,
                             double fallback) const {
    return has(sec, key) ? get_double(sec, key) : fallback;
}

std::int64_t KvFile::get_int(const Section* sec, const std::string& key) const {
    const std::string v = get(sec, key);
    std::int64_t x = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw parse_error("config key '" + key + "' is not an integer: " + v, path_);
    return x;
}

std::int64_t KvFile::get_int_or(const Section* sec, const std::string& key,
                                std::int64_t fallback) const {
    return has(sec, key) ? get_int(sec, key) : fallback;
}

bool KvFile::get_bool_or(const Section* sec, const std::string& key, bool fallback) const {
    if (!has(sec, key)) return fallback;
    const std::string v = get(sec, key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw parse_error("config key '" + key + "' is not a boolean: " + v, path_);
}

std::vector<std::string> KvFile::get_list_or(const Section* sec, const std::string& key) const {
    if (!has(sec, key)) return {};
    return split_csv_list(get(sec, key));
}

}  // namespace ssfplsim
