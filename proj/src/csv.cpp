#include "gpei/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace gpei {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& meta,
                     const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::out | std::ios::trunc), columns_(header.size()) {
    if (!out_) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    for (const auto& line : meta) {
        out_ << "# " << line << '\n';
    }
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
        throw std::logic_error("CsvWriter: row width does not match header in '" + path_ + "'");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) {
        throw std::runtime_error("write failed for '" + path_ + "'");
    }
}

void CsvWriter::row(std::initializer_list<double> values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(fmt(v));
    row(cells);
}

void CsvWriter::close() {
    out_.close();
    if (!out_) {
        throw std::runtime_error("closing '" + path_ + "' failed");
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::out | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

}  // namespace gpei
