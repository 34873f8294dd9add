#ifndef SENSORYREC_ERROR_H_
#define SENSORYREC_ERROR_H_

#include <stdexcept>
#include <string>

namespace sensoryrec {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input content violates a documented constraint (bad row, range, reference).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Lexicon and table loaders.
class LoadError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// CoNLL-U and config parsing.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sensoryrec

#endif  // SENSORYREC_ERROR_H_
