/*
 * Copyright 2026 The essaycoh Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Minimal RFC 4180 CSV: comma separated, double-quote quoting, LF or CRLF
// record ends.

#ifndef ESSAYCOH_CSV_HPP_
#define ESSAYCOH_CSV_HPP_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "essaycoh/errors.hpp"

namespace essaycoh::csv {

inline std::string escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next record, or nothing at end of input. Tracks the 1-based line number
  // where the record started.
  std::optional<std::vector<std::string>> next() {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool any = false;
    record_line_ = line_ + 1;
    int ch;
    while ((ch = in_.get()) != EOF) {
      any = true;
      const char c = static_cast<char>(ch);
      if (quoted) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field += '"';
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field += c;
        }
        continue;
      }
      if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\r' && in_.peek() == '\n') {
        continue;
      } else if (c == '\n') {
        ++line_;
        fields.push_back(std::move(field));
        return fields;
      } else {
        field += c;
      }
    }
    if (quoted) throw InputError("line " + std::to_string(record_line_) + ": unterminated quote");
    if (!any) return std::nullopt;
    ++line_;
    fields.push_back(std::move(field));
    return fields;
  }

  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

}  // namespace essaycoh::csv

#endif  // ESSAYCOH_CSV_HPP_
