#include "hsr/error.hpp"

namespace hsr {

void fail_validation(const std::string& what) {
  throw Error(ErrorKind::validation, what);
}

void fail_io(const std::string& what) { throw Error(ErrorKind::io, what); }

void fail_numerical(const std::string& what) {
  throw Error(ErrorKind::numerical, what);
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation:
      return "validation";
    case ErrorKind::io:
      return "io";
    case ErrorKind::numerical:
      return "numerical";
  }
  return "unknown";
}

}  // namespace hsr
