#pragma once

#include <stdexcept>
#include <string>

namespace hypercover {

// Malformed or out-of-contract input: bad indices, unsupported shapes, ...
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally impossible request: degree below a sharp threshold, isolated
// vertex in a cover request, and similar.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
// Internal certificate check. These guard invariants the algorithms promise
// to maintain, so a failure is a bug, not bad input; they stay on in release
// builds because the checks are cheap next to the work they certify.
inline void ensure(bool cond, const char* what) {
  if (!cond) throw std::logic_error(what);
}
}  // namespace detail

// Parse failure carrying source name and line number.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hypercover
