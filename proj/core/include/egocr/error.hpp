#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace egocr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The regression design matrix [1, T, rho] is (numerically) rank deficient.
class CollinearDesign : public Error {
 public:
  CollinearDesign()
      : Error("collinear design: spillover exposure indistinguishable from treatment") {}
};

}  // namespace egocr
