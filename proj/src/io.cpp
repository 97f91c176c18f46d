#include "bgchaos/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bgchaos/errors.hpp"

namespace bgchaos {

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(Errc::ConfigInvalid, "cannot write '" + tmp.string() + "'");
        out << contents;
        if (!out) fail(Errc::ConfigInvalid, "short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) fail(Errc::ConfigInvalid, "cannot rename onto '" + path + "': " + ec.message());
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) fail(Errc::DimMismatch, "csv header/column count mismatch");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) fail(Errc::DimMismatch, "csv columns have different lengths");
    std::ostringstream os;
    os.precision(17);
    for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
    os << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << columns[k][r];
        os << '\n';
    }
    write_file_atomic(path, os.str());
}

}  // namespace bgchaos
