#pragma once

#include <string>
#include <vector>

namespace nsc {

inline constexpr const char* artifact_version = "0.1.0";

// CSV with a fixed %.17g number format so identical runs are byte-identical
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    void* out_;
    std::size_t ncols_;
};

std::string format_double(double v);

} // namespace nsc
