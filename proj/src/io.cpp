#include "gatom/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <system_error>

namespace gatom {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::string format_number(double value) {
  char buffer[40];
  const auto [end, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::scientific, 12);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buffer, end};
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path temp = path.string() + ".tmp";
  {
    std::FILE* file = std::fopen(temp.c_str(), "wb");
    if (file == nullptr)
      throw std::system_error(errno, std::generic_category(),
                              "cannot open " + temp.string() + " for writing");
    const std::size_t written = std::fwrite(content.data(), 1, content.size(), file);
    const int close_status = std::fclose(file);
    if (written != content.size() || close_status != 0) {
      std::filesystem::remove(temp);
      throw std::runtime_error("short write to " + temp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw std::system_error(ec, "cannot move " + temp.string() + " into place");
  }
}

}  // namespace gatom
