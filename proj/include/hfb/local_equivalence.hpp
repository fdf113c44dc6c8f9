#pragma once

#include "hfb/iota_complex.hpp"

#include <optional>
#include <vector>

namespace hfb {

/// Limits for the exhaustive searches over self-local equivalences.
struct SearchLimits {
  std::size_t rank_bound = 8;     // total F[U]-rank of the complex
  std::size_t max_free_dim = 16;  // dimension of the affine space of maps enumerated
  std::size_t max_piece_dim = 20; // kernel candidates enumerated per grading
};

/// f : x -> y (degree 0, x's shift frame) is a chain map, homotopy-commutes
/// with iota and is an isomorphism after inverting U.
bool is_local_map(const F2Matrix &f, const UComplex &x, const UComplex &y);
/// Some local map x -> y, if one exists (one linear solve).
std::optional<F2Matrix> find_local_map(const UComplex &x, const UComplex &y);
/// Local maps in both directions.
bool locally_equivalent(const UComplex &x, const UComplex &y);

/// Every self-local equivalence of x. Throws RankBoundError beyond the limits.
std::vector<F2Matrix> self_local_equivalences(const UComplex &x, const SearchLimits &limits = {});

/// ker f is contained in ker g (both endomorphisms of x).
bool kernel_contained(const F2Matrix &f, const F2Matrix &g, const UComplex &x);
/// F[U]-rank of ker f.
std::size_t kernel_rank(const F2Matrix &f, const UComplex &x);

/// For a self-local equivalence f, the complex Im(h) for the idempotent power
/// h = f^m, with iota replaced by p iota i where h = i p. It is locally
/// equivalent to x and Im(h) is isomorphic to Im(f) when ker f is maximal.
UComplex image_complex(const F2Matrix &f, const UComplex &x);

/// Repeatedly replaces x by image_complex(f) for a non-injective self-local
/// equivalence f. The result has only injective self-local equivalences, so
/// it is the image of a maximal one: the connected complex.
UComplex connected_complex(const UComplex &x, const SearchLimits &limits = {});

/// Homology of the image of each maximal self-local equivalence found by
/// exhaustive enumeration; throws InternalError if two maximal choices
/// disagree. Returns the common module.
GradedUModule connected_homology_bruteforce(const UComplex &x, const SearchLimits &limits = {});

} // namespace hfb
