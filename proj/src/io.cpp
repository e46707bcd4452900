#include "sinrperc/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sinrperc {

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hash_hex(const std::string& text) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(text));
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // prefer the shortest representation that round-trips
    for (int prec = 1; prec <= 16; ++prec) {
        char cand[40];
        std::snprintf(cand, sizeof cand, "%.*g", prec, v);
        double back;
        std::sscanf(cand, "%lg", &back);
        if (back == v) return cand;
    }
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
    out_ << "# " << key << " " << value << "\n";
}

void CsvWriter::meta(const std::string& key, double value) {
    out_ << "# " << key << " " << format_double(value) << "\n";
}

void CsvWriter::config_block(const std::string& canonical_text) {
    std::istringstream in(canonical_text);
    std::string line;
    while (std::getline(in, line)) out_ << "# cfg " << line << "\n";
}

void CsvWriter::columns(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i)
        out_ << names[i] << (i + 1 < names.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i)
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

std::string extract_embedded_config(const std::string& path) {
    std::string text = read_text_file(path);
    if (!text.empty() && text[0] == '{') {
        auto j = nlohmann::json::parse(text);
        if (!j.contains("config"))
            throw std::runtime_error(path + ": no embedded config object");
        std::string out;
        for (auto& [k, v] : j.at("config").items())
            out += k + " = " + v.get<std::string>() + "\n";
        return out;
    }
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.rfind("# cfg ", 0) == 0) out += line.substr(6) + "\n";
    if (out.empty()) throw std::runtime_error(path + ": no embedded config lines");
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool files_identical(const std::string& a, const std::string& b) {
    return read_text_file(a) == read_text_file(b);
}

}  // namespace sinrperc
