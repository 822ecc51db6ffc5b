#pragma once

// Error taxonomy shared by the library and the CLI.  The CLI maps kinds to
// process exit codes: usage -> 64, input -> 65, internal -> 70.  Check
// failures (a verdict of "no") are reported in-band, not thrown.

#include <stdexcept>
#include <string>

namespace weylkit {

enum class ErrorKind { usage, input, internal };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_usage(const std::string& msg) {
  throw Error(ErrorKind::usage, msg);
}
[[noreturn]] inline void throw_input(const std::string& msg) {
  throw Error(ErrorKind::input, msg);
}
[[noreturn]] inline void throw_internal(const std::string& msg) {
  throw Error(ErrorKind::internal, msg);
}

// Internal consistency assertion.  Failures indicate a convention bug or a
// violated mathematical invariant, never bad user input.
#define WK_ASSERT(cond, msg)                                                   \
  do {                                                                         \
    if (!(cond)) ::weylkit::throw_internal(std::string("assertion failed: ") + \
                                           (msg));                             \
  } while (0)

}  // namespace weylkit
