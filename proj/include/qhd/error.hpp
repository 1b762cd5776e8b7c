#pragma once

#include <stdexcept>
#include <string>

namespace qhd {

enum class ErrorKind {
  kInvalidInput,
  kKernelHit,
  kNoLimit,
  kNotCollinear,
  kCoincidentPoints,
  kNotInterior,
  kNotBoundary,
  kUncertified,
  kNotPreserved,
  kSingularMap,
  kNoLogarithm,
  kNonConvergent,
  kUnsolvable,
  kUnknownId,
  kOverlappingSupports,
  kEmptyCone,
  kNotFixed,
  kGraphFailed,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this exception type; the kind
// lets callers (and the CLI exit-code mapping) distinguish them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kKernelHit: return "kernel hit";
    case ErrorKind::kNoLimit: return "no limit";
    case ErrorKind::kNotCollinear: return "not collinear";
    case ErrorKind::kCoincidentPoints: return "coincident points";
    case ErrorKind::kNotInterior: return "not interior";
    case ErrorKind::kNotBoundary: return "not on boundary";
    case ErrorKind::kUncertified: return "uncertified";
    case ErrorKind::kNotPreserved: return "domain not preserved";
    case ErrorKind::kSingularMap: return "singular map";
    case ErrorKind::kNoLogarithm: return "no real logarithm";
    case ErrorKind::kNonConvergent: return "non-convergent";
    case ErrorKind::kUnsolvable: return "unsolvable";
    case ErrorKind::kUnknownId: return "unknown id";
    case ErrorKind::kOverlappingSupports: return "overlapping supports";
    case ErrorKind::kEmptyCone: return "empty asymptotic cone";
    case ErrorKind::kNotFixed: return "map does not fix (H,p)";
    case ErrorKind::kGraphFailed: return "graph construction failed";
  }
  return "error";
}

}  // namespace qhd
