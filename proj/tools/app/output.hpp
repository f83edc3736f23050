#pragma once

#include <string>

#include "darkspec/errors.hpp"
#include "darkspec/spectra.hpp"

namespace darkspec::app {

class IoError : public Error {
 public:
  using Error::Error;
};

// "delta_lambda,S" header, one row per grid point, %.17g, LF endings.
std::string format_csv(const Spectrum& spectrum);

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace darkspec::app
