#pragma once

#include <stdexcept>
#include <string>

namespace eotrack {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace eotrack
