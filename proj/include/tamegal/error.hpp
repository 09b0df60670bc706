#pragma once

#include <stdexcept>
#include <string>

namespace tamegal {

/// Bad input: violated precondition on user-supplied parameters.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A truncated computation was asked for information outside its window.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tamegal
