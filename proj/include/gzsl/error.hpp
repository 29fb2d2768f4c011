#pragma once

#include <stdexcept>
#include <string>

namespace gzsl {

// All pipeline failures surface as Error; the CLI maps them to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gzsl
