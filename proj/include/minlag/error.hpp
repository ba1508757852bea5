#pragma once

#include <stdexcept>
#include <string>

namespace minlag {

enum class ErrorCode {
  argument = 1,
  shape_mismatch,
  singularity,
  truncation,
  degenerate_parametrization,
  inconsistency,
  structure_violation,
  not_space_form_product,
  parse,
  validation,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace minlag
