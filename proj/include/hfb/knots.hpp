#pragma once

#include "hfb/graded_module.hpp"
#include "hfb/graded_root.hpp"
#include "hfb/iota_complex.hpp"
#include "hfb/knot_spec.hpp"
#include "hfb/local_equivalence.hpp"
#include "hfb/plumbing.hpp"

#include <optional>
#include <string>

namespace hfb {

/// Negative-definite plumbing whose boundary is the double branched cover of
/// the knot, or of its mirror when `mirrored` is set.
struct Presentation {
  PlumbingTree tree;
  CharVector k; // spin characteristic vector (Q^{-1}k integral)
  bool mirrored = false;
  /// Source of the involution on the root: the reflection l -> -l - Q^{-1}k,
  /// the declared tree automorphism, or none (isotopic to the identity).
  enum class Involution { Lattice, Graph, Trivial };
  Involution involution = Involution::Lattice;
};

/// Seifert data r_i = -num_i/den_i, central weight sum floor(r_i) - e, one
/// negative continued-fraction leg per non-integral r_i. Mirrors the data when
/// sum r_i - e > 0 (DefinitenessError when it is 0).
Presentation montesinos_plumbing(long long e, const std::vector<Fraction> &fractions);
/// montesinos(0; 1/a_1, ..., 1/a_k).
Presentation pretzel_plumbing(const std::vector<long long> &a);
/// pq odd: Seifert star of Sigma(2,p,q), trivial involution. pq even: legs
/// L_fix, L_1 = L_2 with the swap of L_1, L_2 declared as automorphism.
/// Negative pq means the mirror of T(|p|,|q|).
Presentation torus_plumbing(long long p, long long q);
/// Torus, pretzel and Montesinos specs only.
Presentation leaf_presentation(const KnotSpec &leaf);

struct KnotOptions {
  std::optional<int> n_max; // root truncation override (star engine)
  SearchLimits limits;
  /// Cross-check roots, reductions and oracles inline; the brute-force
  /// connected homology check honours limits.rank_bound.
  bool verify = false;
};

/// Graded root of the presentation with its involution, d-normalised. Roots
/// are cached per (tree, k, n_max) in memory and, when a cache directory is
/// set, on disk; both caches are thread-safe. InstabilityError when an n_max
/// override leaves the root incomplete.
GradedRoot presentation_root(const Presentation &p, const KnotOptions &opts = {});
/// Empty disables the disk cache.
void set_root_cache_dir(const std::string &dir);

/// Iota-complex of the double branched cover (d-normalised gradings). With
/// `local`, leaves use their monotone subroots, which is locally equivalent.
UComplex knot_complex(const KnotSpec &k, bool local, const KnotOptions &opts = {});

/// Everything is d-normalised (d(S^3) = 0); the hf_minus helpers shift by -2
/// to the HF^- convention in which HF^-(S^3) = F[U]_(-2).
struct InvariantPackage {
  std::string spec;
  Rational delta;
  Rational delta_bar;
  Rational delta_under;
  GradedUModule hfb;      // H_*(cone(Q(1 + iota)))
  GradedUModule conn;     // H_* of the connected complex
  GradedUModule red_conn; // torsion part of conn
  int omega = 0;
  long long det = 0;
  std::optional<int> signature; // from the Goeritz oracle when available

  static Rational hf_minus(const Rational &x) { return x - 2; }
  static GradedUModule hf_minus(const GradedUModule &m) { return m.shifted(Rational(-2)); }
};

InvariantPackage invariants(const KnotSpec &k, const KnotOptions &opts = {});

/// HFB_conn alone (d-normalised), skipping the full complex.
GradedUModule knot_connected_homology(const KnotSpec &k, const KnotOptions &opts = {});

/// Goeritz signature for pretzels with at most five entries, their mirrors
/// and sums of those.
std::optional<int> oracle_signature(const KnotSpec &k);

/// P(4q+3, -2q-1, 4q+1).
KnotSpec k_family(int q);

} // namespace hfb
