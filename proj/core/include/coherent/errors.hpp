#pragma once

#include <stdexcept>
#include <string>

namespace coherent {

// Invalid input: bad files, malformed scenes, violated preconditions.
// The CLI maps this to exit code 2; anything else escaping is internal (exit 1).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coherent
