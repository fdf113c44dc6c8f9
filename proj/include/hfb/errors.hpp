#pragma once

#include <stdexcept>
#include <string>

namespace hfb {

// Each error class maps to one CLI exit code (see tools/hfb_cli.cpp).

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DefinitenessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankBoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant (a bug, not bad input).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace hfb
