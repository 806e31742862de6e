#pragma once

#include <stdexcept>
#include <string>

namespace gait {

// Invalid arguments or violated preconditions (bad K, M, threshold, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Problems with input data: unreadable files, malformed galleries,
// insufficient samples.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gait
