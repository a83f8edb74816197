#include "hardyz/error.hpp"

#include "hardyz/types.hpp"

namespace hardyz {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::singular: return "singular";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + " error: " + what);
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::direct: return "direct";
    case Method::accelerated: return "accelerated";
    case Method::power: return "power";
    case Method::integral: return "integral";
    case Method::euler_maclaurin: return "euler_maclaurin";
    case Method::riemann_siegel: return "riemann_siegel";
  }
  return "unknown";
}

}  // namespace hardyz
