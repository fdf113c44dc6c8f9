#pragma once

#include "hfb/graded_root.hpp"
#include "hfb/local_equivalence.hpp"

#include <string>
#include <vector>

namespace hfb {

struct MonotoneSubroot {
  GradedRoot root;
  std::vector<int> leaves; // the selected set S, as vertices of the source root
};

/// Start at the highest J-invariant vertex v0, take a top pair of leaves under
/// it (or v0 itself when it is a leaf), then walk down the stem adding, at each
/// vertex whose leaf set grows, the highest pair {v, Jv} that beats every
/// weight already selected. M is the smallest subroot containing S.
/// Ties go to the smallest vertex ids.
MonotoneSubroot monotone_subroot(const GradedRoot &root);

struct SymmetricReduction {
  GradedRoot root;     // carries the trivial involution when complete
  int deletions = 0;   // pairs of leaves removed
  bool complete = false;
  std::string obstruction; // why the reduction stopped early
};

/// Deletes pairs {v, Jv} of swapped leaves whose branch can be folded onto a
/// J-invariant vertex of the same level (smallest id first) until J is trivial.
SymmetricReduction symmetric_reduction(const GradedRoot &root);

/// Smallest n with U^n killing the torsion part.
int omega(const GradedUModule &m);

/// H^- of the monotone subroot. With cross_check, also runs the complex-level
/// reduction on the model complex and throws InternalError on disagreement.
GradedUModule root_connected_homology(const GradedRoot &root, bool cross_check = false,
                                      const SearchLimits &limits = {});

/// Homology of connected_complex(x).
GradedUModule connected_homology(const UComplex &x, const SearchLimits &limits = {});

} // namespace hfb
