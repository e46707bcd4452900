#pragma once
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace sinrperc {

inline constexpr const char* TOOL_VERSION = "0.1.0";

std::uint64_t fnv1a64(const std::string& text);
std::string hash_hex(const std::string& text);
std::string format_double(double v);   // shortest round-trip-safe decimal

// CSV with "# key value" provenance headers; all formatting deterministic
class CsvWriter {
public:
    CsvWriter(const std::string& path);
    void meta(const std::string& key, const std::string& value);
    void meta(const std::string& key, double value);
    // each line of block emitted as "# cfg <line>"
    void config_block(const std::string& canonical_text);
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);
    bool good() const { return bool(out_); }

private:
    std::ofstream out_;
};

// canonical config lines recovered from a CSV ("# cfg ..." lines) or JSON
// ("config" object) output file
std::string extract_embedded_config(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);
bool files_identical(const std::string& a, const std::string& b);

}  // namespace sinrperc
