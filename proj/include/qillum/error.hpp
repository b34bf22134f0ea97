#pragma once

#include <stdexcept>

namespace qillum {

/// A parameter or argument lies outside its documented domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical tolerance check failed: non-Hermitian input, negative
/// eigenvalues beyond tolerance, non-real traces, truncation too coarse.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qillum
