#pragma once

#include "hfb/exact_linalg.hpp"

#include <string>
#include <vector>

namespace hfb {

/// F[U]/U^length with its top generator in the given degree.
struct TorsionSummand {
  Rational degree;
  int length = 1;
  bool operator==(const TorsionSummand &) const = default;
};

/// Isomorphism class of a finitely generated graded F[U]-module: towers F[U]
/// (listed by top degree) plus torsion summands.
struct GradedUModule {
  std::vector<Rational> towers;
  std::vector<TorsionSummand> torsion;

  /// Towers descending; torsion by (degree, length).
  GradedUModule &canonicalize();
  bool operator==(const GradedUModule &o) const;

  GradedUModule shifted(const Rational &by) const;
  GradedUModule reduced() const; // torsion part only
  /// Largest torsion length, 0 when there is none.
  int omega() const;
  /// Same module up to one overall grading shift.
  bool same_up_to_shift(const GradedUModule &o) const;

  /// e.g. "F[U]_(-2) + F_(-2) + F[U]/U^3_(-4)"; "0" for the zero module.
  std::string to_string() const;
};

} // namespace hfb
