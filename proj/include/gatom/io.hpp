#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace gatom {

// splitmix64: identical streams for identical seeds on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();                        // [0, 1)
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

// Locale-independent scientific formatting with 12 fractional digits, the
// fixed number format of every generated table.
std::string format_number(double value);

// Writes through a sibling temp file and renames, so readers never observe a
// partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace gatom
