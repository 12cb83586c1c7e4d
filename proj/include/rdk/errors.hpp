#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdk {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedBlock : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Input that does not follow the JSON exchange format.
class MalformedDesign : public Error {
 public:
  using Error::Error;
};

class TooSmall : public Error {
 public:
  using Error::Error;
};

class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// A developed translate overlaps itself or another block of its class.
class NotAClass : public Error {
 public:
  NotAClass(const std::string& what, long shift) : Error(what), shift_(shift) {}
  long shift() const { return shift_; }

 private:
  long shift_;
};

class NotAdmissible : public Error {
 public:
  using Error::Error;
};

class FillMismatch : public Error {
 public:
  using Error::Error;
};

class IndexMismatch : public Error {
 public:
  using Error::Error;
};

class ReplaceMismatch : public Error {
 public:
  using Error::Error;
};

class CombineMismatch : public Error {
 public:
  using Error::Error;
};

class SearchBudgetExceeded : public Error {
 public:
  SearchBudgetExceeded(const std::string& what, long long nodes) : Error(what), nodes_(nodes) {}
  long long nodes() const { return nodes_; }

 private:
  long long nodes_;
};

/// Raised when one or more ingredients have no builtin construction and no
/// file was supplied. `keys()` holds the file-name form of every absent key.
class MissingIngredient : public Error {
 public:
  explicit MissingIngredient(std::vector<std::string> keys)
      : Error(describe(keys)), keys_(std::move(keys)) {}
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  static std::string describe(const std::vector<std::string>& keys) {
    std::string out = "missing ingredient(s):";
    for (const auto& k : keys) out += " " + k;
    return out;
  }
  std::vector<std::string> keys_;
};

/// An ingredient file that failed verification; `report()` is the verifier
/// report as JSON text.
class RejectedIngredient : public Error {
 public:
  RejectedIngredient(const std::string& what, std::string report) : Error(what), report_(std::move(report)) {}
  const std::string& report() const { return report_; }

 private:
  std::string report_;
};

class VersionConflict : public Error {
 public:
  using Error::Error;
};

}  // namespace rdk
