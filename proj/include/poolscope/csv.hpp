#pragma once

#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

namespace poolscope {

// Deterministic float formatting for report files: shortest form that
// round-trips, so identical inputs always produce identical bytes.
std::string format_double(double v);

// Buffered CSV writer. Rows are accumulated and flushed atomically
// (write temp file, then rename) so readers never observe partial output.
class CsvWriter {
  public:
    // Comment lines ('# ...') documenting the columns go before the header.
    CsvWriter(std::filesystem::path path, const std::vector<std::string>& comments,
              const std::string& header);

    CsvWriter& field(const std::string& v);
    CsvWriter& field(const char* v) { return field(std::string(v)); }
    CsvWriter& field(double v) { return field(format_double(v)); }
    template <class Int>
        requires std::is_integral_v<Int>
    CsvWriter& field(Int v) {
        return field(std::to_string(v));
    }
    void end_row();

    // Writes the buffer to disk; the writer must not be reused afterwards.
    void commit();

  private:
    std::filesystem::path path_;
    std::ostringstream buf_;
    bool row_open_ = false;
};

// Atomic small-file write used for non-CSV outputs.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Splits one CSV line; no quoting support (none of our outputs need it).
std::vector<std::string> split_csv_line(const std::string& line);

// Filesystem-safe version of a pool id ('/' and other separators replaced).
std::string sanitize_filename(const std::string& name);

}  // namespace poolscope
