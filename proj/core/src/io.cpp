#include "wvl/io.hpp"

#include <cstdio>
#include <fstream>

#include "wvl/error.hpp"

namespace wvl {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) {
    auto* os = new std::ofstream(path, std::ios::trunc);
    if (!*os) {
        delete os;
        throw Error("CsvWriter: cannot open " + path);
    }
    os_ = os;
}

CsvWriter::~CsvWriter() { delete static_cast<std::ofstream*>(os_); }

void CsvWriter::header(const std::vector<std::string>& columns) {
    auto& os = *static_cast<std::ofstream*>(os_);
    for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    auto& os = *static_cast<std::ofstream*>(os_);
    for (size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << format_double(values[i]);
    os << "\n";
}

void CsvWriter::row(double time, const std::string& quantity, double value) {
    auto& os = *static_cast<std::ofstream*>(os_);
    os << format_double(time) << "," << quantity << "," << format_double(value) << "\n";
}

} // namespace wvl
