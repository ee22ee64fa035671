// Copyright 2026 The LoI Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOI_COMMON_ERRORS_H_
#define LOI_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace loi {

// Every failure the library reports falls in one of three buckets. The
// numeric values double as the CLI exit codes.
enum class ErrorCategory {
  kConfiguration = 2,
  kValidation = 3,
  kNumerical = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }
  int exit_code() const { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorCategory::kConfiguration, message) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorCategory::kValidation, message) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message)
      : Error(ErrorCategory::kNumerical, message) {}
};

// Malformed input text. Row and column are zero-based.
class ParseError : public ValidationError {
 public:
  ParseError(int row, int column, const std::string& message);

  int row() const { return row_; }
  int column() const { return column_; }

 private:
  int row_;
  int column_;
};

#define LOI_DEFINE_ERROR(Name, Base)                 \
  class Name : public Base {                         \
   public:                                           \
    explicit Name(const std::string& message)        \
        : Base(message) {}                           \
  }

LOI_DEFINE_ERROR(TerminalStateError, ValidationError);
LOI_DEFINE_ERROR(OrderingError, ValidationError);
LOI_DEFINE_ERROR(InsufficientCheckpointsError, ValidationError);
LOI_DEFINE_ERROR(IncompatibleHistogramError, ValidationError);
LOI_DEFINE_ERROR(InfeasiblePlanError, ValidationError);
LOI_DEFINE_ERROR(IntegrityError, ValidationError);
LOI_DEFINE_ERROR(DegenerateInputError, NumericalError);
LOI_DEFINE_ERROR(UndefinedCorrelationError, NumericalError);
LOI_DEFINE_ERROR(DomainError, NumericalError);

#undef LOI_DEFINE_ERROR

}  // namespace loi

#endif  // LOI_COMMON_ERRORS_H_
