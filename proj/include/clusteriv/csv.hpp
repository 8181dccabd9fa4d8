#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clusteriv {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when absent
  // Indices of columns named <prefix>1, <prefix>2, ... in order.
  std::vector<int> prefixed_columns(const std::string& prefix) const;
};

CsvTable read_csv(std::istream& in, const std::string& what);
CsvTable read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);

}  // namespace clusteriv
