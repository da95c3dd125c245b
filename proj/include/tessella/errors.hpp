#pragma once

#include <stdexcept>
#include <string>

namespace tessella {

enum class Errc {
  mode_mismatch,
  degenerate_geometry,
  syntax_error,
  unknown_prototile,
  lambda_out_of_range,
  unsupported_radicand,
  unknown_builtin,
  unknown_tile_type,
  patch_too_large,
  spectral_no_converge,
  use_count_instead,
  not_a_rotation,
  reducible_matrix,
  insufficient_radius,
  io_error,
  invalid_argument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg, int line = -1, int col = -1)
      : std::runtime_error(std::move(msg)), code_(code), line_(line), col_(col) {}

  Errc code() const { return code_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  Errc code_;
  int line_, col_;
};

[[noreturn]] inline void fail(Errc code, std::string msg, int line = -1, int col = -1) {
  throw Error(code, std::move(msg), line, col);
}

}  // namespace tessella
