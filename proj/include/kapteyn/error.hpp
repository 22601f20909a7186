#pragma once

#include <stdexcept>
#include <string>

namespace kapteyn {

enum class ErrorKind {
  invalid_argument,       // precondition on a plain argument (n < 1, k > n, ...)
  domain,                 // argument outside the mathematical domain (|z| > 4, t <= 0)
  not_in_domain,          // Kapteyn series does not converge at (z, t)
  outside_radius,         // power series does not converge at (z, t)
  tolerance_not_reached,  // Bessel series exhausted its term budget
  no_convergence,         // Kapteyn/power series hit the term cap
  zero_coefficient,       // A_n(t) is exactly zero, log-radius undefined
  numerical,              // solver failed an internal consistency check
  io,
  parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kapteyn
