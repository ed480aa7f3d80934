#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace mfp {

// Shortest decimal representation that round-trips the double exactly;
// keeps regression diffs byte-stable.
std::string format_double(double v);

// Minimal CSV emitter: header row once, then numeric rows.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);

  private:
    std::ofstream out_;
    size_t columns_;
};

}  // namespace mfp
