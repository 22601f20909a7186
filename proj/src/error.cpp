#include "kapteyn/error.hpp"

namespace kapteyn {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::not_in_domain: return "not in convergence domain";
    case ErrorKind::outside_radius: return "outside radius of convergence";
    case ErrorKind::tolerance_not_reached: return "tolerance not reached";
    case ErrorKind::no_convergence: return "no convergence";
    case ErrorKind::zero_coefficient: return "zero coefficient";
    case ErrorKind::numerical: return "numerical failure";
    case ErrorKind::io: return "i/o error";
    case ErrorKind::parse: return "parse error";
  }
  return "error";
}

}  // namespace kapteyn
