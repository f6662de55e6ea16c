#pragma once
// Canonical CSV serialization. One formatting function for every floating
// value that ends up in a report, so that identical numbers always produce
// identical bytes: comma separator, '.' decimal point, scientific notation for
// magnitudes below 1e-4. Each table ends with '#'-prefixed metadata comments
// carrying the config hash and the library version.

#include <cstdint>
#include <string>
#include <vector>

namespace klab {

inline constexpr const char* kVersion = "0.1.0";

std::string fmt_num(double v);
std::string fmt_int(long long v);

uint64_t fnv1a64(const std::string& bytes);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells);
  // Serializes header, rows and trailing metadata comments.
  std::string str(const std::string& config_canonical) const;
  size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

bool write_text_file(const std::string& path, const std::string& content);

}  // namespace klab
