#ifndef DECO_IO_HPP
#define DECO_IO_HPP

#include <string>
#include <vector>

namespace deco {

// One header row plus numeric rows, 12 significant digits.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string format_number(double v); // 12 significant digits
std::string to_csv(const CsvTable& table);

// Write-temp-then-rename so partially written outputs are never observed.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace deco

#endif
