#pragma once

#include "hfb/exact_linalg.hpp"

#include <optional>
#include <vector>

namespace hfb {

/// Integer covector on plumbing vertices; also used for lattice points.
using CharVector = std::vector<long long>;
using LatticePoint = std::vector<long long>;

/// Weighted plumbing tree. Vertices are indexed 0..size()-1 internally and carry
/// an external id used by the JSON form.
class PlumbingTree {
public:
  PlumbingTree() = default;
  /// Edges and automorphism are given in external ids. Throws InvalidInputError
  /// unless the edges form a tree and the automorphism is a weight- and
  /// adjacency-preserving involution.
  PlumbingTree(std::vector<long> ids, std::vector<long> weights,
               const std::vector<std::pair<long, long>> &edges,
               const std::optional<std::vector<std::pair<long, long>>> &automorphism = std::nullopt);

  /// Star with the given central weight; each leg lists weights outward.
  static PlumbingTree star(long centre, const std::vector<std::vector<long>> &legs);
  static PlumbingTree chain(const std::vector<long> &weights);

  int size() const { return static_cast<int>(weights_.size()); }
  long id(int v) const { return ids_[static_cast<std::size_t>(v)]; }
  long weight(int v) const { return weights_[static_cast<std::size_t>(v)]; }
  const std::vector<long> &ids() const { return ids_; }
  const std::vector<long> &weights() const { return weights_; }
  const std::vector<std::pair<int, int>> &edges() const { return edges_; }
  const std::vector<int> &neighbours(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int index_of(long id) const;

  /// Vertex permutation (internal indices); empty when none was declared.
  const std::vector<int> &automorphism() const { return aut_; }
  bool has_automorphism() const { return !aut_.empty(); }
  PlumbingTree with_automorphism(const std::vector<int> &perm) const;

  /// At most one vertex of valency >= 3.
  bool is_star_shaped() const;
  /// The vertex of maximal valency (smallest index among ties).
  int centre() const;

private:
  void validate_and_index();

  std::vector<long> ids_;
  std::vector<long> weights_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> aut_;
};

IntMatrix intersection_form(const PlumbingTree &t);
void require_negative_definite(const PlumbingTree &t); // DefinitenessError

/// k(v) = -2 - e_v.
CharVector canonical_char(const PlumbingTree &t);
bool is_characteristic(const PlumbingTree &t, const CharVector &k);

/// l^T Q l, exact in 64 bits for the coefficient ranges the root engines use.
long long self_pairing(const PlumbingTree &t, const LatticePoint &l);
/// chi_k(l) = -(k(l) + l^2)/2; InternalError when k is not characteristic.
long long chi(const PlumbingTree &t, const CharVector &k, const LatticePoint &l);

/// k^T Q^{-1} k.
Rational k_square(const PlumbingTree &t, const CharVector &k);

/// Q^{-1} k when integral.
std::optional<LatticePoint> poincare_dual(const PlumbingTree &t, const CharVector &k);

/// {0,1}-vector w with Q w = diag(Q) mod 2.
std::vector<int> wu_class(const PlumbingTree &t);
/// Neumann-Siebenmann invariant (sign(Q) - w^2)/8.
Rational mu_bar(const PlumbingTree &t);

/// Characteristic vector of the self-conjugate spin structure with integral
/// Q^{-1}k: the canonical vector when that works, else Q * wu.
CharVector spin_char(const PlumbingTree &t);

/// l -> -l - Q^{-1}k; preserves chi_k.
LatticePoint reflect(const LatticePoint &l, const LatticePoint &pd);

/// Coordinate permutation by the automorphism.
LatticePoint permute(const PlumbingTree &t, const LatticePoint &l);

} // namespace hfb
