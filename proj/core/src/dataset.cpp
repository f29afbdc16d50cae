// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "elbokit/error.hpp"

namespace elbokit {

void Dataset::validate() const {
    if (data_dim == 0) {
        throw DimensionError("Dataset: data_dim must be positive");
    }
    if (name.find_first_of(",\n\r") != std::string::npos) {
        throw FormatError("Dataset: name may not contain commas or newlines");
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        detail::require_same_size(rows[r].size(), data_dim, "Dataset row width");
        for (double v : rows[r]) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DomainError("Dataset: row " + std::to_string(r) + " has a value outside [0, 1]");
            }
        }
    }
}

Matrix Dataset::gather(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), data_dim);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const auto& src = rows.at(indices[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

Matrix Dataset::as_matrix() const {
    Matrix out(rows.size(), data_dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::copy(rows[i].begin(), rows[i].end(), out.row(i).begin());
    }
    return out;
}

Dataset gen_bars(std::size_t n, std::size_t side, RngState& rng) {
    if (side < 2) {
        throw DomainError("gen_bars: side must be at least 2");
    }
    Dataset d{"bars", rng.seed(), side * side, {}};
    d.rows.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t pick = rng.below(2 * side);
        std::vector<double> row(side * side, 0.0);
        const std::size_t line = pick % side;
        const bool horizontal = pick < side;
        for (std::size_t t = 0; t < side; ++t) {
            row[horizontal ? line * side + t : t * side + line] = 1.0;
        }
        d.rows.push_back(std::move(row));
    }
    return d;
}

double squash_blob_coordinate(double p) noexcept {
    return std::clamp(0.5 + 0.05 * p, 0.0, 1.0);
}

Dataset gen_gaussian_blobs(std::size_t n, std::span<const std::array<double, 2>> centers, double spread,
                           RngState& rng) {
    if (centers.empty()) {
        throw DomainError("gen_gaussian_blobs: need at least one center");
    }
    if (!(spread > 0.0) || !std::isfinite(spread)) {
        throw DomainError("gen_gaussian_blobs: spread must be positive");
    }
    Dataset d{"gaussian_blobs", rng.seed(), 2, {}};
    d.rows.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& c = centers[rng.below(centers.size())];
        const double px = c[0] + spread * rng.normal();
        const double py = c[1] + spread * rng.normal();
        d.rows.push_back({squash_blob_coordinate(px), squash_blob_coordinate(py)});
    }
    return d;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out << contents;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset) {
    dataset.validate();
    std::string text = "# " + dataset.name + "," + std::to_string(dataset.seed) + "," +
                       std::to_string(dataset.data_dim) + "\n";
    for (const auto& row : dataset.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) text += ',';
            text += format_double(row[i]);
        }
        text += '\n';
    }
    write_file_atomic(path, text);
}

namespace {

template <typename T>
T parse_number(std::string_view field, std::size_t line_no, const char* what) {
    T value{};
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        throw FormatError("line " + std::to_string(line_no) + ": bad " + what + " '" + std::string(field) + "'",
                          line_no);
    }
    return value;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open dataset " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
        throw FormatError("line 1: expected header '# name,seed,data_dim'", 1);
    }
    const auto header = split_commas(std::string_view(line).substr(2));
    if (header.size() != 3) {
        throw FormatError("line 1: header needs exactly name,seed,data_dim", 1);
    }
    Dataset d;
    d.name = std::string(header[0]);
    d.seed = parse_number<std::uint64_t>(header[1], 1, "seed");
    d.data_dim = parse_number<std::size_t>(header[2], 1, "data_dim");
    if (d.data_dim == 0) {
        throw FormatError("line 1: data_dim must be positive", 1);
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != d.data_dim) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(d.data_dim) +
                                  " values, got " + std::to_string(fields.size()),
                              line_no);
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto f : fields) {
            const double v = parse_number<double>(f, line_no, "value");
            if (!(v >= 0.0 && v <= 1.0)) {
                throw FormatError("line " + std::to_string(line_no) + ": value outside [0, 1]", line_no);
            }
            row.push_back(v);
        }
        d.rows.push_back(std::move(row));
    }
    return d;
}

}  // namespace elbokit
