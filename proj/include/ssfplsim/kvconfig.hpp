#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ssfplsim {

// Flat key=value text files with optional [section] blocks and # comments.
// Keys before the first section act as defaults for every section.
class KvFile {
public:
    struct Section {
        std::string name;
        std::map<std::string, std::string> values;
    };

    static KvFile parse_file(const std::string& path);
    static KvFile parse_text(const std::string& text, const std::string& path = "<memory>");

    const std::map<std::string, std::string>& globals() const { return globals_; }
    const std::vector<Section>& sections() const { return sections_; }

    // lookup helpers operating on a merged (globals + section) view
    bool has(const Section* sec, const std::string& key) const;
    std::string get(const Section* sec, const std::string& key) const;
    std::string get_or(const Section* sec, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const Section* sec, const std::string& key) const;
    double get_double_or(const Section* sec, const std::string& key, double fallback) const;
    std::int64_t get_int(const Section* sec, const std::string& key) const;
    std::int64_t get_int_or(const Section* sec, const std::string& key,
                            std::int64_t fallback) const;
    bool get_bool_or(const Section* sec, const std::string& key, bool fallback) const;
    std::vector<std::string> get_list_or(const Section* sec, const std::string& key) const;

private:
    std::string path_;
    std::map<std::string, std::string> globals_;
    std::vector<Section> sections_;
};

std::vector<std::string> split_csv_list(const std::string& s);

// shortest decimal representation that round-trips exactly
std::string format_double(double x);

}  // namespace ssfplsim
