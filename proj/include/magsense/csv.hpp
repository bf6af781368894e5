#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace magsense::io {

/// Shortest round-trip decimal formatting (deterministic, locale-free).
std::string format_double(double v);

/// CSV writer with '#' comment rows. Every file opens with the manifest hash.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& manifest_hash);
    ~CsvWriter();

    void comment(const std::string& text);
    void header(const std::vector<std::string>& names);
    void field(double v);
    void field(long long v);
    void field(const std::string& v);
    void end_row();
    void close();

private:
    std::ofstream out_;
    bool row_open_ = false;
    std::string path_;
};

/// Reader for the same dialect: leading '#' lines collected as comments, the
/// first regular line is the header.
class CsvReader {
public:
    explicit CsvReader(const std::string& path);

    const std::vector<std::string>& comments() const { return comments_; }
    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

private:
    std::vector<std::string> comments_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// FNV-1a hash of a string, hex-encoded; used as the manifest fingerprint.
std::string fnv1a_hex(const std::string& data);

}  // namespace magsense::io
