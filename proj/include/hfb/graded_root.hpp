#pragma once

#include "hfb/plumbing.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hfb {

enum class RootEngine { Box, Star, Abstract };

/// Finite truncation of a graded root. Vertex v sits at sublevel n = level(v)
/// and has weight base - 2n; successors go up one level. Vertices are numbered
/// by (level, representative lattice point).
class GradedRoot {
public:
  GradedRoot() = default;

  /// Takes raw per-vertex data in any order and renumbers it. succ entries of -1
  /// mark vertices without a successor (the top level). Involution may be empty.
  static GradedRoot from_parts(Rational base, std::vector<int> level, std::vector<int> succ,
                               std::vector<LatticePoint> rep, std::vector<int> involution, RootEngine engine,
                               bool exact);

  int size() const { return static_cast<int>(level_.size()); }
  int level(int v) const { return level_[static_cast<std::size_t>(v)]; }
  Rational weight(int v) const { return base_ - 2 * level(v); }
  const Rational &base_weight() const { return base_; }
  int successor(int v) const { return succ_[static_cast<std::size_t>(v)]; }
  const std::vector<int> &children(int v) const { return children_[static_cast<std::size_t>(v)]; }
  const LatticePoint &representative(int v) const { return rep_[static_cast<std::size_t>(v)]; }
  std::vector<int> leaves() const;
  std::vector<int> vertices_at_level(int n) const;
  int min_level() const { return level_.empty() ? 0 : level_.front(); }
  int max_level() const { return level_.empty() ? 0 : level_.back(); }

  /// Smallest level from which every level holds a single vertex.
  int truncation_level() const;
  /// All levels exact and at least three single-vertex levels on top.
  bool complete() const;
  bool exact() const { return exact_; }
  /// The unique top vertex; throws InstabilityError when the top level is split.
  int top() const;
  RootEngine engine() const { return engine_; }
  /// Box radius used by the box engine (0 otherwise).
  int build_radius() const { return radius_; }
  void set_build_radius(int r) { radius_ = r; }

  bool has_involution() const { return !inv_.empty(); }
  int involution(int v) const { return inv_.empty() ? v : inv_[static_cast<std::size_t>(v)]; }
  const std::vector<int> &involution() const { return inv_; }
  /// Attaches an involution after checking J^2 = id, levels and successors.
  GradedRoot with_involution(std::vector<int> inv) const;
  GradedRoot with_trivial_involution() const;

  /// Subroot spanned by the given vertices and everything above them,
  /// involution restricted (the set must be J-invariant when J is present).
  GradedRoot subroot(const std::vector<int> &keep) const;
  /// Drop levels above max_level (keeps exactness flag).
  GradedRoot truncated(int max_level) const;
  /// Extend the top stem up to the given level.
  GradedRoot extended(int max_level) const;

private:
  Rational base_ = 0;
  std::vector<int> level_;
  std::vector<int> succ_;
  std::vector<std::vector<int>> children_;
  std::vector<LatticePoint> rep_;
  std::vector<int> inv_;
  RootEngine engine_ = RootEngine::Abstract;
  bool exact_ = true;
  int radius_ = 0;
};

/// Point map used to induce an involution on components (reflection or
/// coordinate permutation).
using LatticeMap = std::function<LatticePoint(const LatticePoint &)>;

struct BoxOptions {
  std::optional<int> n_max;            // default: three connected levels
  int radius = 2;                      // initial radius
  bool grow = true;                    // double the radius until two runs agree
  std::size_t max_points = 30'000'000; // memory guard on the box volume
};

/// (k^2 + |G|)/4.
Rational root_base_weight(const PlumbingTree &t, const CharVector &k);

/// Sublevel components of chi_k inside a box around the real minimiser. The
/// half-width along v is ceil(radius * sqrt(-Q^{-1}_vv)), so the box contains
/// {chi <= min chi + radius^2/2}. Single run; exact() reports whether every
/// level lies below the boundary minimum.
GradedRoot build_root_box_once(const PlumbingTree &t, const CharVector &k, std::optional<int> n_max, int radius,
                               const LatticeMap *map = nullptr);
GradedRoot build_root_box_once_budget(const PlumbingTree &t, const CharVector &k, std::optional<int> n_max,
                                      int radius, const LatticeMap *map, std::size_t max_points);
/// Box engine with radius growth until two consecutive runs agree.
GradedRoot build_root_box(const PlumbingTree &t, const CharVector &k, const BoxOptions &opts = {},
                          const LatticeMap *map = nullptr);

/// One-dimensional reduction over the central coefficient. Exact: outside a
/// computed window the profile is strictly monotone.
GradedRoot build_root_star(const PlumbingTree &t, const CharVector &k, std::optional<int> n_max = std::nullopt);

/// J induced by l -> -l - Q^{-1}k (requires integral Q^{-1}k).
GradedRoot lattice_involution(const PlumbingTree &t, const CharVector &k, const GradedRoot &root);
/// Involution induced by the tree automorphism (k must be invariant).
GradedRoot graph_involution(const PlumbingTree &t, const CharVector &k, const GradedRoot &root);

/// Maximum weight.
Rational d_invariant(const GradedRoot &root);

/// Canonical text of the abstract weighted tree with involution, cut at the
/// given weight floor (defaults to the lowest weight present).
std::string canonical_form(const GradedRoot &root, std::optional<Rational> floor = std::nullopt);
/// Isomorphism of complete roots compared down to the higher of the two floors.
bool isomorphic(const GradedRoot &a, const GradedRoot &b);

std::string render_dot(const GradedRoot &root);

} // namespace hfb
