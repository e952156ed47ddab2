#ifndef GPEI_CSV_HPP
#define GPEI_CSV_HPP

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace gpei {

/// Fixed "%.12g" rendering used for every number written to disk.
std::string fmt(double x);

/// Comma-separated output with leading '#' metadata lines and a header row.
/// Throws std::runtime_error on I/O failure.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& meta, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);
    void row(std::initializer_list<double> values);
    void close();

private:
    std::string path_;
    std::ofstream out_;
    std::size_t columns_;
};

/// Writes a whole text file; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gpei

#endif  // GPEI_CSV_HPP
