#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace fogcap::cli {

/// Nine significant digits, the on-disk float format for every artifact.
inline std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// CSV artifact writer. Every file starts with a comment row carrying the
/// config hash and seed so artifacts are traceable to their inputs.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& hash_hex, std::uint64_t seed)
        : out_(path) {
        if (!out_) throw std::runtime_error(path + ": cannot open for writing");
        out_ << "# config_hash=" << hash_hex << " seed=" << seed << "\n";
    }

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

    void row(const std::string& line) { out_ << line << "\n"; }

private:
    std::ofstream out_;
};

}  // namespace fogcap::cli
