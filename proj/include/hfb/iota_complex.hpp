#pragma once

#include "hfb/f2.hpp"
#include "hfb/graded_module.hpp"
#include "hfb/graded_root.hpp"

#include <string>
#include <vector>

namespace hfb {

/// Free chain complex over F[U] (deg U = -2) with a grading-preserving chain
/// map iota. Generator i sits in grading shift + deg(i). A homogeneous map of
/// degree s is stored as an F2 matrix: entry (i, j) stands for the coefficient
/// U^a with a = (deg(i) - deg(j) - s) / 2, so a set entry needs a to be a
/// non-negative integer. Composition is then plain F2 multiplication.
class UComplex {
public:
  UComplex() = default;
  /// Checks homogeneity, d^2 = 0 and d iota = iota d (InternalError otherwise).
  UComplex(Rational shift, std::vector<long long> deg, F2Matrix d, F2Matrix iota, std::vector<std::string> names = {});

  std::size_t size() const { return deg_.size(); }
  const Rational &shift() const { return shift_; }
  long long deg(std::size_t i) const { return deg_[i]; }
  const std::vector<long long> &degrees() const { return deg_; }
  Rational grading(std::size_t i) const { return shift_ + deg_[i]; }
  const F2Matrix &differential() const { return d_; }
  const F2Matrix &iota() const { return iota_; }
  const std::string &name(std::size_t i) const { return names_[i]; }

  /// iota^2 is chain homotopic to the identity.
  bool iota_is_homotopy_involution() const;
  /// Same complex with a different iota (checked).
  UComplex with_iota(F2Matrix iota) const;
  /// Grading shift by an arbitrary rational.
  UComplex shifted(const Rational &by) const;

  std::string to_string() const;

private:
  Rational shift_ = 0;
  std::vector<long long> deg_;
  F2Matrix d_;
  F2Matrix iota_;
  std::vector<std::string> names_;
};

/// Entry (i, j) of a degree-s map with row degrees r and column degrees c is allowed.
bool allowed_entry(long long row_deg, long long col_deg, long long s);
/// Every set entry is allowed.
bool is_homogeneous(const F2Matrix &m, const std::vector<long long> &row_deg, const std::vector<long long> &col_deg,
                    long long s);

/// Model complex of a graded root: leaves in their weights, one odd generator
/// per pair of consecutive children of a vertex a (weight w(a) + 1), with
/// d(angle) = U^e v + U^f v' for the top leaves v, v' of the two subtrees.
/// iota is lifted from the root involution (identity when none is attached).
UComplex model_complex(const GradedRoot &root);

/// Tensor product with iota_X (x) iota_Y.
UComplex tensor(const UComplex &x, const UComplex &y);
/// F[U]-dual with negated gradings (the mirror / orientation reversal).
UComplex dual(const UComplex &x);
/// Mapping cone of iota + 1: generators x in their gradings and Qx one lower;
/// d(x) = dx + Q(iota + 1)x. The iota carried along is the identity.
UComplex iota_cone(const UComplex &x);

/// H_*(C) as a graded F[U]-module. Exact: below the lowest generator grading
/// multiplication by U is an isomorphism on homology, so only towers live there.
GradedUModule homology(const UComplex &c);
/// Homology of the iota-cone.
GradedUModule branched_homology(const UComplex &c);
/// Graded F2 dimensions of the kernel and cokernel of (iota + 1)_* on H_*(C)
/// in gradings [lo, hi]; the cone satisfies dim HB_g = ker_g + coker_{g+1}.
struct KerCokerDims {
  Rational lo;
  std::vector<long long> ker, coker, cone;
};
KerCokerDims ker_coker_dims(const UComplex &c, const Rational &lo, const Rational &hi);

/// Top tower of the homology (the d-invariant in this normalisation).
Rational tower_degree(const UComplex &c);
struct DeltaPair {
  Rational upper, lower;
};
/// From the two towers of the cone: lower = the tower in the parity of the
/// d-invariant, upper = the other tower plus one (both equal d when iota = id).
DeltaPair delta_invariants(const UComplex &c);

} // namespace hfb
