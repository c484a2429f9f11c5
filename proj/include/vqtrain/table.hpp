// Copyright 2026 The vqtrain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * CSV result tables with a `# key=value` configuration header.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vqtrain {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

class ResultTable {
public:
    using Cell = std::variant<long long, double, std::string>;

    explicit ResultTable(std::vector<std::string> columns);

    void add_meta(std::string key, std::string value);
    void add_meta(std::string key, double value);
    void add_meta(std::string key, long long value);

    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    const std::vector<std::pair<std::string, std::string>>& meta() const noexcept { return meta_; }

    /// Header comments, column line, then rows. Lines end with '\n'.
    void write(std::ostream& out) const;
    /// Column line and rows only.
    void write_body(std::ostream& out) const;
    std::string to_string() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<Cell>> rows_;
};

} // namespace vqtrain
