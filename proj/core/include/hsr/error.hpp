#pragma once

#include <stdexcept>
#include <string>

namespace hsr {

/// Failure classes. The CLI maps them onto exit codes 2, 3 and 4.
enum class ErrorKind { validation, io, numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail_validation(const std::string& what);
[[noreturn]] void fail_io(const std::string& what);
[[noreturn]] void fail_numerical(const std::string& what);

inline void require(bool condition, const std::string& what) {
  if (!condition) fail_validation(what);
}

const char* to_string(ErrorKind kind) noexcept;

}  // namespace hsr
