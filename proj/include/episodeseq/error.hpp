#pragma once

#include <stdexcept>
#include <string>

namespace episodeseq {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input: episode strings, data files, tables, corpora.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An occurrence or cover that does not match the data it claims to describe.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// An encoding table whose rows are internally inconsistent.
class FormatError : public ParseError {
 public:
  using ParseError::ParseError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace episodeseq
