#include "output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <unistd.h>

namespace darkspec::app {

std::string format_csv(const Spectrum& spectrum) {
  std::string out = "delta_lambda,S\n";
  out.reserve(out.size() + spectrum.values.size() * 48);
  char line[96];
  for (int i = 0; i < spectrum.grid.n; ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", spectrum.grid.point(i),
                  spectrum.values[static_cast<std::size_t>(i)]);
    out += line;
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace darkspec::app
