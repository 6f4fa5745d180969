#pragma once

#include <stdexcept>

namespace ttn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched tensor / vector dimensions.
struct ShapeError : Error { using Error::Error; };

/// Invalid topology, split, or run configuration.
struct ConfigError : Error { using Error::Error; };

/// Input value outside its documented domain (e.g. pixel not in [0,1]).
struct DomainError : Error { using Error::Error; };

/// Materialization would exceed the element-count cap.
struct CapacityError : Error { using Error::Error; };

/// Decision-vector norm fell below the Born-rule floor.
struct DegenerateOutputError : Error { using Error::Error; };

/// API misuse, e.g. a dropout mask applied to a dense model.
struct UsageError : Error { using Error::Error; };

/// Non-finite loss or gradient encountered during optimization.
struct DivergenceError : Error { using Error::Error; };

/// Malformed input bytes (IDX files, checkpoints).
struct ParseError : Error { using Error::Error; };

/// Filesystem-level failures.
struct IoError : Error { using Error::Error; };

} // namespace ttn
