#pragma once

#include <stdexcept>
#include <string>

namespace contactred {

/// Raised when an input violates a geometric precondition (off-manifold
/// point, non-tangent vector, degenerate covector, singular system).
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace contactred
