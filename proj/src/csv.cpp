#include "lde/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace lde {

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

std::string format_cell(const CsvCell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell))
        return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell))
        return format_double(*d);
    return std::get<std::string>(cell);
}

void CsvWriter::add_row(std::vector<CsvCell> row) {
    if (row.size() != header_.size())
        throw std::runtime_error("CsvWriter: row width does not match header");
    rows_.push_back(std::move(row));
}

std::string CsvWriter::render(const std::string& version_line) const {
    std::string out = "# " + version_line + "\n";
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i)
            out += ',';
        out += header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += format_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace lde
