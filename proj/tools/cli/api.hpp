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

#include <memory>
#include <stdexcept>
#include <string>

#include "cic/cic.h"

namespace cli {

// Failure categories; each maps to a distinct process exit code.
enum class Category { usage, config, invalid, numerical, io, disagreement, internal };

int exit_code(Category c);
const char* category_name(Category c);

class CliError : public std::runtime_error {
 public:
  CliError(Category c, const std::string& what) : std::runtime_error(what), category_(c) {}
  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

// Throws CliError carrying cic_last_error() unless status is CIC_OK.
void check(cic_status status, const char* what);

struct LibraryDeleter {
  void operator()(cic_library* p) const noexcept { cic_library_free(p); }
};
struct SchemeDeleter {
  void operator()(cic_scheme* p) const noexcept { cic_scheme_free(p); }
};
struct OptimizationDeleter {
  void operator()(cic_optimization* p) const noexcept { cic_optimization_free(p); }
};

using Library = std::unique_ptr<cic_library, LibraryDeleter>;
using Scheme = std::unique_ptr<cic_scheme, SchemeDeleter>;
using Optimization = std::unique_ptr<cic_optimization, OptimizationDeleter>;

}  // namespace cli
