#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curenet::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static line chart, log-scaled on both axes when every value is positive.
void write_line_chart(std::ostream& out, const std::vector<Series>& series,
                      const std::string& x_label, const std::string& y_label);

}  // namespace curenet::cli
