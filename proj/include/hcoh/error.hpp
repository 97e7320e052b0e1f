#pragma once

#include <stdexcept>
#include <string>

namespace hcoh {

// Kinds map onto CLI exit codes 2, 3 and 4.
enum class ErrorKind { invalid_input, refused, verification };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorKind::invalid_input, what); }
[[noreturn]] inline void refuse(const std::string& what) { throw Error(ErrorKind::refused, what); }
[[noreturn]] inline void verification_failed(const std::string& what) {
  throw Error(ErrorKind::verification, what);
}

}  // namespace hcoh
