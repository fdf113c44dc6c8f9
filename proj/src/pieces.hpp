#pragma once

// F2 models of the graded pieces of a free F[U]-complex and of the linear
// systems used to search for chain maps and homotopies.

#include "hfb/iota_complex.hpp"

#include <map>
#include <vector>

namespace hfb::detail {

/// C_t (grading shift + t) has basis U^a g_i over generators with deg_i >= t,
/// deg_i = t mod 2, a = (deg_i - t) / 2. Positions follow generator order.
class Pieces {
public:
  explicit Pieces(const std::vector<long long> &deg);

  long long min_deg() const { return min_; }
  long long max_deg() const { return max_; }
  const std::vector<std::size_t> &gens(long long t) const;
  /// Position of generator i in C_t, or -1.
  int pos(long long t, std::size_t i) const;
  std::size_t dim(long long t) const { return gens(t).size(); }

  /// Degree-s map m (rows: target with degrees tdeg) restricted to C_t -> C'_{t-s}.
  F2Matrix restrict(const F2Matrix &m, const Pieces &target, long long t, long long s) const;
  /// U^m : C_t -> C_{t-2m} as a position map (every generator survives).
  F2Vector times_u(const F2Vector &x, long long t, long long m) const;

private:
  struct Piece {
    std::vector<std::size_t> gens;
    std::vector<int> pos;
  };
  const Piece &piece(long long t) const;

  std::vector<long long> deg_;
  long long min_ = 0, max_ = 0;
  mutable std::map<long long, Piece> cache_;
};

/// Cycles and boundaries of a complex, per grading, with caching.
class CycleData {
public:
  explicit CycleData(const UComplex &c);
  const Pieces &pieces() const { return p_; }
  const F2Subspace &cycles(long long t) const;
  const F2Subspace &boundaries(long long t) const;
  std::size_t homology_dim(long long t) const { return cycles(t).dim() - boundaries(t).dim(); }
  /// Parity t (in {min-2, min-1}) of the deep grading carrying the tower.
  long long deep_tower_grading() const;

private:
  const UComplex &c_;
  Pieces p_;
  mutable std::map<long long, F2Subspace> z_, b_;
};

/// Unknown entries of a homogeneous map X -> Y of degree s.
struct MapVars {
  std::size_t offset = 0; // first unknown index
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  std::size_t rows = 0, cols = 0;
  MapVars(const std::vector<long long> &ydeg, const std::vector<long long> &xdeg, long long s, std::size_t offset);
  std::size_t count() const { return entries.size(); }
  /// The map given by the unknown values in sol.
  F2Matrix value(const F2Vector &sol) const;
};

/// Matrix-valued linear equations sum (A V B) = R over F2 with V unknown maps.
class MatrixEquations {
public:
  MatrixEquations(std::size_t rows, std::size_t cols, std::size_t unknowns);
  void add_left(const F2Matrix &a, const MapVars &v);  // a * V
  void add_right(const MapVars &v, const F2Matrix &b); // V * b
  void add_constant(const F2Matrix &r);                // moves r to the right-hand side
  /// Appends every non-trivial equation; false when inconsistent.
  bool feed(F2LinearSystem &sys) const;

private:
  std::size_t rows_, cols_;
  std::vector<F2Vector> coeff_;
  F2Matrix rhs_;
};

/// m is chain homotopic to zero as a map X -> Y of degree 0 (same shift frame).
bool null_homotopic(const F2Matrix &m, const UComplex &x, const UComplex &y);

/// Copy of y with shift moved to x's shift (degrees adjusted); nullopt when the
/// shifts differ by a non-integer.
std::optional<UComplex> rebase(const UComplex &y, const Rational &shift);

} // namespace hfb::detail
