#ifndef VROPT_ERRORS_HPP
#define VROPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vropt {

class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data; message names the offending line.
class parse_error : public error {
 public:
  parse_error(const std::string& what, long line)
      : error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit parse_error(const std::string& what) : error(what), line_(0) {}
  long line() const { return line_; }

 private:
  long line_;
};

class config_error : public error {
 public:
  using error::error;
};

class dimension_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

}  // namespace vropt

#endif
