#pragma once

#include <stdexcept>
#include <string>

namespace tuckercross {

/// The interpolation system built from a guide basis is numerically singular.
class DegenerateBasisError : public std::runtime_error {
 public:
  explicit DegenerateBasisError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// A factor matrix restricted to the selected rows is numerically
/// rank-deficient, so the oblique projection of the intersection tensor
/// cannot be formed reliably.
class IllConditionedIntersectionError : public std::runtime_error {
 public:
  explicit IllConditionedIntersectionError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// The unfolded core of the evolving solution is numerically singular;
/// the factor evolution equation cannot be evaluated at the current rank.
class SingularCoreError : public std::runtime_error {
 public:
  explicit SingularCoreError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// A density has nonpositive total mass and cannot be normalized.
class DegenerateDensityError : public std::runtime_error {
 public:
  explicit DegenerateDensityError(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace tuckercross
