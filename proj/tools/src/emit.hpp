#pragma once

#include "tbound/log_magnitude.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace tbound::cli {

struct Metadata {
    std::string config_hash = "none";
    std::string mode = "none";
    std::string variant = "none";
    std::vector<std::pair<std::string, std::string>> extra;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// "# tbound version=... config_hash=... mode=... variant=..." plus any extra key=value pairs
std::string metadata_line(const Metadata& meta);

// Throws std::invalid_argument on empty rows.
void emit_table(const Table& table, const Metadata& meta, std::ostream& out);
// "-" writes to stdout; throws std::runtime_error when the path cannot be written.
void write_table(const Table& table, const Metadata& meta, const std::string& path);

// Fixed precision rendering used for raw numeric columns.
std::string fmt_real(double x, int digits = 6);
std::string fmt_log10(LogMag v);

} // namespace tbound::cli
