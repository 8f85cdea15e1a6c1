/*
   Copyright 2026 The cic Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cli {

// A CSV table held as text cells; numbers are formatted on insertion so
// writing and re-reading is lossless.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;  // throws if absent
  double number(std::size_t row, std::string_view name) const;
  bool operator==(const Table&) const = default;
};

// 12 significant digits; "inf" / "-inf" / "nan" for non-finite values.
std::string format_number(double v);
// Accepts format_number output plus "∞" and "+inf".
double parse_number(std::string_view text);

// RFC 4180: CRLF line ends, fields quoted when they hold a comma, quote or
// line break; quotes doubled inside quoted fields.
std::string write_csv(const Table& t);
Table parse_csv(std::string_view text);

}  // namespace cli
