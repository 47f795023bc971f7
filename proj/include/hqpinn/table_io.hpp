// Copyright 2026 The HQ-PINN Authors
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
 * Comma-delimited numeric tables.
 *
 * Format: one header line
 *
 *     # rows=<R> cols=<C> columns=<name_0>,<name_1>,...
 *
 * followed by R lines of C comma-separated values. Numbers are written in
 * shortest round-trip form, so a write/read cycle is bit-exact.
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace hqpinn {

struct Table {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::string> columns;
    std::vector<double> values; ///< Row-major.

    Table() = default;
    Table(std::size_t r, std::size_t c, std::vector<std::string> names = {});

    double &operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    [[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    [[nodiscard]] std::vector<double> column(std::size_t c) const;
};

[[nodiscard]] std::string format_number(double v);

[[nodiscard]] std::string format_table(const Table &t);

void write_table(const std::filesystem::path &path, const Table &t);

/// Throws IoError naming the file and the offending line.
[[nodiscard]] Table read_table(const std::filesystem::path &path);

} // namespace hqpinn
