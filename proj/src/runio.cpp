#include "nsc/runio.hpp"

#include <cstdio>
#include <stdexcept>

namespace nsc {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), ncols_(columns.size())
{
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("csv: cannot open " + path);
    out_ = f;
    std::string header;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) header += ",";
        header += columns[i];
    }
    header += "\n";
    std::fwrite(header.data(), 1, header.size(), f);
}

CsvWriter::~CsvWriter()
{
    if (out_) std::fclose(static_cast<std::FILE*>(out_));
}

void CsvWriter::row(const std::vector<double>& values)
{
    if (values.size() != ncols_) throw std::runtime_error("csv: column count mismatch");
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ",";
        line += format_double(values[i]);
    }
    line += "\n";
    std::fwrite(line.data(), 1, line.size(), static_cast<std::FILE*>(out_));
}

void CsvWriter::row_mixed(const std::vector<std::string>& values)
{
    if (values.size() != ncols_) throw std::runtime_error("csv: column count mismatch");
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ",";
        line += values[i];
    }
    line += "\n";
    std::fwrite(line.data(), 1, line.size(), static_cast<std::FILE*>(out_));
}

} // namespace nsc
