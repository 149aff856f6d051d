#pragma once

// Locale-independent CSV tables and atomic file writes.

#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kawahara/error.hpp"

namespace kawahara::harness {

/// Shortest round-trip decimal form of a double ('.' separator, no locale).
inline std::string format_real(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw InvalidArgument("cannot format number");
  return std::string(buf.data(), ptr);
}

using Cell = std::variant<std::string, double, std::int64_t>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) throw InvalidArgument("csv row width does not match header");
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  /// Numeric column by name (strings are skipped).
  std::vector<double> column(std::string_view name) const {
    std::size_t idx = header_.size();
    for (std::size_t i = 0; i < header_.size(); ++i)
      if (header_[i] == name) idx = i;
    if (idx == header_.size()) throw InvalidArgument("no csv column " + std::string(name));
    std::vector<double> out;
    for (const auto& r : rows_) {
      if (const auto* d = std::get_if<double>(&r[idx])) out.push_back(*d);
      if (const auto* i = std::get_if<std::int64_t>(&r[idx])) out.push_back(static_cast<double>(*i));
    }
    return out;
  }

  std::string str() const {
    std::string out;
    auto line = [&](const auto& cells, auto&& fmt) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += fmt(cells[i]);
      }
      out += '\n';
    };
    line(header_, [](const std::string& s) { return s; });
    for (const auto& r : rows_)
      line(r, [](const Cell& c) {
        if (const auto* s = std::get_if<std::string>(&c)) return *s;
        if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
        return std::to_string(std::get<std::int64_t>(c));
      });
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

/// Writes to path.tmp then renames over path.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot open " + tmp.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw FormatError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// Minimal reader for the tables written above (no quoting).
inline std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    out.push_back(std::move(cells));
  }
  return out;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
  return s;
}

}  // namespace kawahara::harness
