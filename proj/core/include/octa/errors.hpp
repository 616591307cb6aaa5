#pragma once

#include <stdexcept>
#include <string>

namespace octa {

/// Violated precondition or malformed input.
struct ContractError : std::invalid_argument {
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

/// Integer arithmetic left the supported magnitude range.
struct OverflowError : std::runtime_error {
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// A hom-set or element enumeration exceeded the configured cap.
struct EnumTooLargeError : std::runtime_error {
  explicit EnumTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/// Two independent computation paths disagreed, or a guaranteed solve failed.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace octa
