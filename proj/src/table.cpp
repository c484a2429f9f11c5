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

#include "vqtrain/table.hpp"

#include "vqtrain/errors.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

namespace vqtrain {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw ContractError("a table needs at least one column");
}

void ResultTable::add_meta(std::string key, std::string value) {
    if (key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos) {
        throw ContractError("metadata must not contain '=' in keys or newlines");
    }
    meta_.emplace_back(std::move(key), std::move(value));
}

void ResultTable::add_meta(std::string key, double value) { add_meta(std::move(key), format_double(value)); }

void ResultTable::add_meta(std::string key, long long value) {
    add_meta(std::move(key), std::to_string(value));
}

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw SizeError("row width does not match the column count");
    rows_.push_back(std::move(row));
}

namespace {

void write_cell(std::ostream& out, const ResultTable::Cell& cell) {
    if (const auto* i = std::get_if<long long>(&cell)) {
        out << *i;
    } else if (const auto* d = std::get_if<double>(&cell)) {
        out << format_double(*d);
    } else {
        out << std::get<std::string>(cell);
    }
}

} // namespace

void ResultTable::write_body(std::ostream& out) const {
    for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            write_cell(out, row[c]);
        }
        out << '\n';
    }
}

void ResultTable::write(std::ostream& out) const {
    for (const auto& [k, v] : meta_) out << "# " << k << '=' << v << '\n';
    write_body(out);
}

std::string ResultTable::to_string() const {
    std::ostringstream s;
    write(s);
    return s.str();
}

} // namespace vqtrain
