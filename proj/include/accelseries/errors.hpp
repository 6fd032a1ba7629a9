#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace accel {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed decimal text. `line()` is 0 when the text did not come from a file.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A term provider failed (or produced a non-positive magnitude) at index n.
class TermError : public Error {
 public:
  TermError(std::size_t n, const std::string& why)
      : Error("term " + std::to_string(n) + ": " + why), index_(n) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// alpha_n == 0 where a ratio alpha_{n+1}/alpha_n is required.
class DegenerateTermError : public Error {
 public:
  explicit DegenerateTermError(std::size_t n)
      : Error("alpha_" + std::to_string(n) + " is zero"), index_(n) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class RegistryError : public Error {
 public:
  using Error::Error;
};

/// The requested series cannot be represented exactly in the rational backend.
class IrrationalTermError : public RegistryError {
 public:
  explicit IrrationalTermError(const std::string& name)
      : RegistryError("series '" + name +
                      "' has irrational terms; use a floating-point backend") {}
};

/// Sign pattern of a term list is not +,-,+,... . `position()` is a 1-based
/// line number for files, or a term index otherwise.
class AlternationError : public Error {
 public:
  AlternationError(std::size_t position, const std::string& why)
      : Error(why + " (at " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DegenerateDifferenceError : public Error {
 public:
  explicit DegenerateDifferenceError(std::size_t n)
      : Error("zero second difference at n=" + std::to_string(n)), index_(n) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Base for failures pinned to one table entry (k, n).
class EntryError : public Error {
 public:
  EntryError(const std::string& what, int k, std::size_t n)
      : Error(what + " at (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")"),
        k_(k),
        n_(n) {}
  int order() const noexcept { return k_; }
  std::size_t index() const noexcept { return n_; }

 private:
  int k_;
  std::size_t n_;
};

class DegenerateWeightError : public EntryError {
 public:
  DegenerateWeightError(int k, std::size_t n) : EntryError("zero weight denominator", k, n) {}
};

class DegenerateDenominatorError : public EntryError {
 public:
  DegenerateDenominatorError(int k, std::size_t n) : EntryError("zero denominator", k, n) {}
};

/// p/q rescaling could not keep the recurrence finite.
class OverflowError : public Error {
 public:
  explicit OverflowError(int k)
      : Error("p/q recurrence overflowed at k=" + std::to_string(k)), k_(k) {}
  int order() const noexcept { return k_; }

 private:
  int k_;
};

/// Requested (k, n) lies outside what a table or term budget provides.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Rounding noise dominates a quantity; rerun with more digits.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class DegenerateDiagnosticError : public Error {
 public:
  using Error::Error;
};

/// rel_error was asked to divide by a zero reference.
class ZeroReferenceError : public Error {
 public:
  ZeroReferenceError() : Error("reference value is zero; use the absolute error") {}
};

}  // namespace accel
