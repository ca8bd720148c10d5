#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tabfix {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed structured input; path points at the offending field, e.g. "rows[2][0].col_span".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class DegenerateAgreement : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(std::string item, std::size_t expected, std::size_t got)
      : Error("item '" + item + "' has " + std::to_string(got) + " labels, expected " +
              std::to_string(expected)),
        item_(std::move(item)) {}
  const std::string& item() const noexcept { return item_; }

 private:
  std::string item_;
};

class MissingPlaceholder : public Error {
 public:
  using Error::Error;
};

class InvalidTemplate : public Error {
 public:
  using Error::Error;
};

class RulesError : public Error {
 public:
  using Error::Error;
};

class ReplayError : public Error {
 public:
  using Error::Error;
};

}  // namespace tabfix
