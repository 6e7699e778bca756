#pragma once

#include <stdexcept>
#include <string>

namespace docre {

// Malformed or inconsistent input data (files, records, references).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values during training or inference.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace docre
