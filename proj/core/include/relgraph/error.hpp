#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relgraph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// An enumeration or search would exceed its configured work budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace relgraph
