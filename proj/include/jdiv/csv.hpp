#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "jdiv/error.hpp"

namespace jdiv::csv {

/// Split one record into fields. Double-quoted fields may contain the
/// delimiter; an embedded quote is written as "".
inline std::vector<std::string> split_record(const std::string& line,
                                             char delim) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

inline std::string escape_field(const std::string& s, char delim = ',') {
  bool needs_quotes = s.find(delim) != std::string::npos ||
                      s.find('"') != std::string::npos ||
                      s.find('\n') != std::string::npos;
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// Column lookup for a header row. Required columns are resolved by name so
/// extra columns and reordering in input files are tolerated.
class HeaderMap {
 public:
  HeaderMap(const std::vector<std::string>& header_fields,
            const std::vector<std::string>& required,
            const std::string& file_label)
      : width_(header_fields.size()) {
    for (size_t i = 0; i < header_fields.size(); ++i) {
      cols_.emplace(trim(header_fields[i]), static_cast<int>(i));
    }
    for (const auto& name : required) {
      if (cols_.find(name) == cols_.end()) {
        throw DataError("malformed header in " + file_label +
                        ": missing column '" + name + "'");
      }
    }
  }

  int col(const std::string& name) const {
    auto it = cols_.find(name);
    return it == cols_.end() ? -1 : it->second;
  }

  size_t size() const { return width_; }

 private:
  size_t width_;
  std::unordered_map<std::string, int> cols_;
};

/// Line-oriented reader for delimited text. Blank lines and lines starting
/// with '#' (artifact metadata headers) are skipped.
class Reader {
 public:
  explicit Reader(const std::string& path, char delim = ',')
      : in_(path), delim_(delim), path_(path) {
    if (!in_) throw DataError("cannot open file: " + path);
  }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      fields = split_record(line, delim_);
      return true;
    }
    return false;
  }

  /// Reads the header row and validates the required column names.
  HeaderMap header(const std::vector<std::string>& required) {
    std::vector<std::string> fields;
    if (!next(fields)) {
      throw DataError("malformed header in " + path_ + ": file has no rows");
    }
    return HeaderMap(fields, required, path_);
  }

  size_t line_number() const { return line_number_; }
  const std::string& path() const { return path_; }

 private:
  std::ifstream in_;
  char delim_;
  std::string path_;
  size_t line_number_ = 0;
};

/// Formats a double with enough digits to round-trip exactly through text.
/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace jdiv::csv
