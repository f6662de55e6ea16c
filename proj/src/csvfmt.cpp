#include "klab/csvfmt.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace klab {

std::string fmt_num(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const double av = std::fabs(v);
  if (av < 1e-4) {
    std::snprintf(buf, sizeof(buf), "%.10e", v);
  } else {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
  }
  return buf;
}

std::string fmt_int(long long v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld", v);
  return buf;
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void CsvWriter::add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

std::string CsvWriter::str(const std::string& config_canonical) const {
  std::string out;
  for (size_t j = 0; j < header_.size(); ++j) {
    if (j) out += ',';
    out += header_[j];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += row[j];
    }
    out += '\n';
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "#config-hash=%016llx\n",
                static_cast<unsigned long long>(fnv1a64(config_canonical)));
  out += buf;
  out += "#version=";
  out += kVersion;
  out += '\n';
  return out;
}

bool write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << content;
  return static_cast<bool>(f);
}

}  // namespace klab
