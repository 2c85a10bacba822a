#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace colombeau {

// Adaptive quadrature could not meet its tolerance share within max_depth.
struct DepthExceeded : std::runtime_error {
  explicit DepthExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Scale parameter outside the admissible range of the requested embedding.
struct BadEpsilon : std::invalid_argument {
  explicit BadEpsilon(const std::string& msg) : std::invalid_argument(msg) {}
};

// Moment system too ill-conditioned to trust the synthesized coefficients.
struct IllConditioned : std::runtime_error {
  explicit IllConditioned(const std::string& msg) : std::runtime_error(msg) {}
};

// Rate fitting needs at least four usable ladder samples.
struct TooFewPoints : std::invalid_argument {
  explicit TooFewPoints(const std::string& msg) : std::invalid_argument(msg) {}
};

// C^k-mode candidate is not realizable as a C^k function on the window.
struct CandidateNotCk : std::invalid_argument {
  explicit CandidateNotCk(const std::string& msg) : std::invalid_argument(msg) {}
};

// Invalid configuration key, value, or combination.
struct ConfigError : std::invalid_argument {
  explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Parse failure. `offset` is a byte offset into the source text; `expected`
// lists the token classes that would have been accepted there.
struct SyntaxError : std::runtime_error {
  std::size_t offset;
  std::vector<std::string> expected;
  SyntaxError(std::size_t off, std::vector<std::string> exp, const std::string& msg)
      : std::runtime_error(msg), offset(off), expected(std::move(exp)) {}
};

}  // namespace colombeau
