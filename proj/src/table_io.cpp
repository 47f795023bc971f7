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
#include "hqpinn/table_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hqpinn/errors.hpp"

namespace hqpinn {

namespace {

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::filesystem::path &path, std::size_t line, const std::string &what) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": " + what);
}

} // namespace

Table::Table(std::size_t r, std::size_t c, std::vector<std::string> names)
    : rows(r), cols(c), columns(std::move(names)), values(r * c, 0.0) {
    if (columns.empty()) {
        for (std::size_t i = 0; i < c; ++i) {
            columns.push_back("c" + std::to_string(i));
        }
    }
}

std::vector<double> Table::column(std::size_t c) const {
    std::vector<double> out(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string format_table(const Table &t) {
    std::string out = "# rows=" + std::to_string(t.rows) + " cols=" + std::to_string(t.cols) + " columns=";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        out += (c ? "," : "") + t.columns[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < t.rows; ++r) {
        for (std::size_t c = 0; c < t.cols; ++c) {
            if (c) {
                out += ',';
            }
            out += format_number(t(r, c));
        }
        out += '\n';
    }
    return out;
}

void write_table(const std::filesystem::path &path, const Table &t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << format_table(t);
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

Table read_table(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        fail(path, 1, "empty file");
    }
    Table t;
    {
        std::istringstream hdr(line);
        std::string hash;
        hdr >> hash;
        if (hash != "#") {
            fail(path, 1, "expected header '# rows=N cols=M'");
        }
        std::string field;
        bool have_rows = false;
        bool have_cols = false;
        while (hdr >> field) {
            const auto eq = field.find('=');
            if (eq == std::string::npos) {
                fail(path, 1, "malformed header field '" + field + "'");
            }
            const std::string key = field.substr(0, eq);
            const std::string val = field.substr(eq + 1);
            try {
                if (key == "rows") {
                    t.rows = std::stoul(val);
                    have_rows = true;
                } else if (key == "cols") {
                    t.cols = std::stoul(val);
                    have_cols = true;
                } else if (key == "columns") {
                    t.columns = split(val, ',');
                }
            } catch (const std::exception &) {
                fail(path, 1, "bad header value '" + field + "'");
            }
        }
        if (!have_rows || !have_cols) {
            fail(path, 1, "header must declare rows= and cols=");
        }
    }
    if (t.columns.size() != t.cols) {
        t.columns.clear();
        for (std::size_t i = 0; i < t.cols; ++i) {
            t.columns.push_back("c" + std::to_string(i));
        }
    }
    t.values.reserve(t.rows * t.cols);
    std::size_t line_no = 1;
    std::size_t data_rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != t.cols) {
            fail(path, line_no,
                 "expected " + std::to_string(t.cols) + " values, found " + std::to_string(fields.size()));
        }
        for (const auto &f : fields) {
            const std::string s = trim(f);
            double v = 0.0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
                fail(path, line_no, "not a number: '" + s + "'");
            }
            t.values.push_back(v);
        }
        ++data_rows;
    }
    if (data_rows != t.rows) {
        fail(path, line_no,
             "header declares " + std::to_string(t.rows) + " rows, found " + std::to_string(data_rows));
    }
    return t;
}

} // namespace hqpinn
