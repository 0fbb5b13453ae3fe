#include "mczeta/types.hpp"

namespace mczeta {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::near_singular: return "near-singular";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::unsupported: return "unsupported";
  }
  return "unknown";
}

void raise(ErrorKind kind, const std::string& what) {
  throw MathError(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace mczeta
