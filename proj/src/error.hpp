#ifndef DESCQA_ERROR_HPP
#define DESCQA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace descqa {

// Error categories map 1:1 onto the CLI exit codes and the C API status
// values: usage -> 1, data -> 2, backend -> 3.
enum class ErrorKind { Usage = 1, Data = 2, Backend = 3 };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void usage_error(const std::string& msg) {
  throw Error(ErrorKind::Usage, msg);
}
[[noreturn]] inline void data_error(const std::string& msg) {
  throw Error(ErrorKind::Data, msg);
}
[[noreturn]] inline void backend_error(const std::string& msg) {
  throw Error(ErrorKind::Backend, msg);
}

}  // namespace descqa

#endif
