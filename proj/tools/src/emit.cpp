#include "emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace tbound::cli {

std::string metadata_line(const Metadata& meta)
{
    std::string s = std::string("# tbound version=") + TBOUND_VERSION +
                    " config_hash=" + meta.config_hash + " mode=" + meta.mode +
                    " variant=" + meta.variant;
    for (const auto& [k, v] : meta.extra)
        s += " " + k + "=" + v;
    return s;
}

void emit_table(const Table& table, const Metadata& meta, std::ostream& out)
{
    if (table.rows.empty())
        throw std::invalid_argument("emit_table: no rows to write");
    out << metadata_line(meta) << '\n';
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            out << (c ? "," : "") << cells[c];
        out << '\n';
    };
    line(table.header);
    for (const auto& r : table.rows)
        line(r);
}

void write_table(const Table& table, const Metadata& meta, const std::string& path)
{
    if (path == "-") {
        emit_table(table, meta, std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    emit_table(table, meta, out);
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

std::string fmt_real(double x, int digits)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string fmt_log10(LogMag v)
{
    if (v.is_zero())
        return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v.log10());
    return buf;
}

} // namespace tbound::cli
