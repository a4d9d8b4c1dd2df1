#include "poolscope/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "poolscope/errors.hpp"

namespace poolscope {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    // shortest representation that parses back to the same double
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) break;
    }
    return buf;
}

CsvWriter::CsvWriter(std::filesystem::path path, const std::vector<std::string>& comments,
                     const std::string& header)
    : path_(std::move(path)) {
    for (const auto& c : comments) buf_ << "# " << c << '\n';
    buf_ << header << '\n';
}

CsvWriter& CsvWriter::field(const std::string& v) {
    if (row_open_) buf_ << ',';
    buf_ << v;
    row_open_ = true;
    return *this;
}

void CsvWriter::end_row() {
    buf_ << '\n';
    row_open_ = false;
}

void CsvWriter::commit() { write_file_atomic(path_, buf_.str()); }

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::io_error, "cannot open " + tmp.string());
        out << contents;
        if (!out) throw Error(Errc::io_error, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string sanitize_filename(const std::string& name) {
    std::string out = name;
    for (char& c : out) {
        if (c == '/' || c == '\\' || c == ':' || c == ' ') c = '-';
    }
    return out;
}

}  // namespace poolscope
