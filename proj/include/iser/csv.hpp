#pragma once

// CSV ingestion and emission. All floating-point output uses shortest
// round-trip formatting (std::to_chars), so written files parse back to
// bit-identical values and repeated runs produce byte-identical files.

#include <charconv>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "iser/dataset.hpp"
#include "iser/errors.hpp"

namespace iser {

inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

inline double parse_cell(std::string_view cell, std::size_t data_row, const std::string& column) {
    double value = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw DataError("row " + std::to_string(data_row) + ", column " + column +
                        ": cannot parse '" + std::string(cell) + "' as a finite number");
    }
    return value;
}

}  // namespace detail

/// Reads a UTF-8, comma-separated file with one header row. When
/// label_column is given, that column is parsed as {0,1} labels; every other
/// column must parse as a finite real. Rows are numbered from 1 (header
/// excluded) in error messages.
inline Dataset ingest_csv(const std::string& path, const std::optional<std::string>& label_column = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    const auto header = detail::split_fields(line);

    std::size_t label_index = header.size();
    if (label_column) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == *label_column) { label_index = i; break; }
        }
        if (label_index == header.size()) {
            throw DataError(path + ": label column '" + *label_column + "' not found");
        }
    }

    Dataset data;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i != label_index) data.feature_names.emplace_back(header[i]);
    }
    const std::size_t d = data.feature_names.size();
    if (d == 0) throw DataError(path + ": no feature columns");
    if (label_column) data.labels.emplace();

    std::vector<double> values;
    std::size_t n = 0;
    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        ++data_row;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != header.size()) {
            throw DataError(path + ": row " + std::to_string(data_row) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(header.size()));
        }
        std::size_t feature = 0;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == label_index) {
                const double v = detail::parse_cell(fields[i], data_row, *label_column);
                if (v != 0.0 && v != 1.0) {
                    throw DataError(path + ": row " + std::to_string(data_row) +
                                    ": label value '" + std::string(fields[i]) + "' outside {0,1}");
                }
                data.labels->push_back(v == 1.0 ? 1 : 0);
            } else {
                values.push_back(detail::parse_cell(fields[i], data_row, data.feature_names[feature]));
                ++feature;
            }
        }
        ++n;
    }
    if (n == 0) throw DataError(path + ": no data rows");

    data.points.rows = n;
    data.points.cols = d;
    data.points.values = std::move(values);
    return data;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("write failed: " + path);
}

inline void write_dataset_csv(const std::string& path, const Dataset& data,
                              const std::string& label_column = "label") {
    std::string out;
    const std::size_t d = data.dim();
    for (std::size_t c = 0; c < d; ++c) {
        if (c) out += ',';
        out += c < data.feature_names.size() ? data.feature_names[c] : "f" + std::to_string(c);
    }
    if (data.has_labels()) {
        out += ',';
        out += label_column;
    }
    out += '\n';
    for (std::size_t r = 0; r < data.n(); ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if (c) out += ',';
            out += format_double(data.points(r, c));
        }
        if (data.has_labels()) {
            out += ',';
            out += std::to_string((*data.labels)[r]);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

/// Score CSV: `row_index,score` with an optional `label` passthrough.
inline void write_scores_csv(const std::string& path, std::span<const double> scores,
                             const std::optional<std::vector<int>>& labels = {}) {
    std::string out = labels ? "row_index,score,label\n" : "row_index,score\n";
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(scores[i]);
        if (labels) {
            out += ',';
            out += std::to_string((*labels)[i]);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

}  // namespace iser
