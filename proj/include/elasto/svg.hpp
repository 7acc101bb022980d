#pragma once

#include <string>
#include <vector>

namespace elasto {

struct Series {
  std::string name;
  std::vector<double> y;
};

/// Static SVG line chart. With log_y, non-positive samples are skipped.
std::string line_chart(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                       const std::vector<Series>& series, bool log_y = false);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace elasto
