#include "magsense/csv.hpp"

#include <charconv>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace magsense::io {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

CsvWriter::CsvWriter(const std::string& path, const std::string& manifest_hash) : path_(path) {
    out_.open(path, std::ios::binary);
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    out_ << "# manifest " << manifest_hash << "\n";
}

CsvWriter::~CsvWriter() { close(); }

void CsvWriter::close() {
    if (out_.is_open()) {
        out_.close();
        if (!out_) throw std::runtime_error("write failure on " + path_);
    }
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << "\n";
}

void CsvWriter::field(double v) {
    if (row_open_) out_ << ",";
    out_ << format_double(v);
    row_open_ = true;
}

void CsvWriter::field(long long v) {
    if (row_open_) out_ << ",";
    out_ << v;
    row_open_ = true;
}

void CsvWriter::field(const std::string& v) {
    if (row_open_) out_ << ",";
    out_ << v;
    row_open_ = true;
}

void CsvWriter::end_row() {
    out_ << "\n";
    row_open_ = false;
}

namespace {
std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}
}  // namespace

CsvReader::CsvReader(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string c = line.substr(1);
            if (!c.empty() && c[0] == ' ') c = c.substr(1);
            comments_.push_back(c);
            continue;
        }
        if (!have_header) {
            header_ = split_line(line);
            have_header = true;
        } else {
            rows_.push_back(split_line(line));
        }
    }
}

}  // namespace magsense::io
