#pragma once

#include <stdexcept>
#include <string>

namespace gridmend {

// Bad user input: malformed files, invalid parameters. CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Input rejected by the network parser; carries a 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Instance exceeds a configured enumeration cap. CLI exit code 2.
class CapError : public std::runtime_error {
 public:
  explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gridmend
