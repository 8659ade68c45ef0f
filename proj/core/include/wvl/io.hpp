#ifndef WVL_IO_HPP
#define WVL_IO_HPP

#include <string>
#include <vector>

namespace wvl {

// Long-format CSV: header "time,quantity,value", one record per pair.
// Numbers printed with %.17g so reruns are byte-identical.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void row(double time, const std::string& quantity, double value);

private:
    void* os_; // std::ofstream, kept out of the header
};

std::string format_double(double v);

} // namespace wvl

#endif
