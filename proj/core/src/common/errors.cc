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

#include "loi/common/errors.h"

namespace loi {

ParseError::ParseError(int row, int column, const std::string& message)
    : ValidationError("parse error at row " + std::to_string(row) +
                      ", column " + std::to_string(column) + ": " + message),
      row_(row),
      column_(column) {}

}  // namespace loi
