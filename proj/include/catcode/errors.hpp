#pragma once

#include <stdexcept>
#include <string>

namespace catcode {

enum class errc {
    insufficient_primes,
    insufficient_moduli,
    not_coprime,
    modulus_too_small,
    not_a_modulus,
    division_by_zero,
    out_of_range,
    bad_parameters,
    cap_exceeded,
    shape_mismatch,
    unreachable,
    parse_error,
    io_error,
};

class CodingError : public std::runtime_error {
  public:
    CodingError(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) { throw CodingError(code, msg); }

} // namespace catcode
