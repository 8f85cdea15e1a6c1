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

#include "api.hpp"

namespace cli {

int exit_code(Category c) {
  switch (c) {
    case Category::usage: return 2;
    case Category::config: return 3;
    case Category::invalid: return 4;
    case Category::numerical: return 5;
    case Category::io: return 6;
    case Category::disagreement: return 7;
    case Category::internal: return 1;
  }
  return 1;
}

const char* category_name(Category c) {
  switch (c) {
    case Category::usage: return "usage";
    case Category::config: return "config";
    case Category::invalid: return "invalid-argument";
    case Category::numerical: return "numerical";
    case Category::io: return "io";
    case Category::disagreement: return "disagreement";
    case Category::internal: return "internal";
  }
  return "internal";
}

void check(cic_status status, const char* what) {
  if (status == CIC_OK) return;
  Category c = Category::internal;
  switch (status) {
    case CIC_ERR_INVALID_ARGUMENT: c = Category::invalid; break;
    case CIC_ERR_NUMERICAL:
    case CIC_ERR_DIVERGENCE:
    case CIC_ERR_INFEASIBLE: c = Category::numerical; break;
    case CIC_ERR_IO: c = Category::io; break;
    default: break;
  }
  throw CliError(c, std::string(what) + ": " + cic_last_error());
}

}  // namespace cli
