#pragma once

#include <stdexcept>
#include <string>

namespace fm {

/// Runtime numeric failure (divergent integral, saturation, stalled solver).
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fm
