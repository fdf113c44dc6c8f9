#include "hfb/connected.hpp"

#include "hfb/errors.hpp"

#include <algorithm>
#include <set>

namespace hfb {

namespace {

// Leaves below each vertex (C(v) in the root's terminology).
std::vector<std::set<int>> leaf_sets(const GradedRoot &r) {
  std::vector<std::set<int>> c(static_cast<std::size_t>(r.size()));
  for (int v = 0; v < r.size(); ++v) {
    if (r.children(v).empty())
      c[v].insert(v);
    for (int ch : r.children(v))
      c[v].insert(c[ch].begin(), c[ch].end());
  }
  return c;
}

// Highest-weight pair {v, Jv} (v != Jv) in the set, ties to the smallest ids.
std::optional<std::pair<int, int>> top_pair(const GradedRoot &r, const std::set<int> &leaves) {
  std::optional<std::pair<int, int>> best;
  for (int v : leaves) {
    const int j = r.involution(v);
    if (j == v || !leaves.count(j))
      continue;
    const std::pair<int, int> p{std::min(v, j), std::max(v, j)};
    if (!best || r.level(p.first) < r.level(best->first) ||
        (r.level(p.first) == r.level(best->first) && p < *best))
      best = p;
  }
  return best;
}

} // namespace

MonotoneSubroot monotone_subroot(const GradedRoot &r) {
  if (r.size() == 0)
    throw InvalidInputError("empty root");
  int v0 = -1;
  for (int v = 0; v < r.size() && v0 < 0; ++v)
    if (r.involution(v) == v)
      v0 = v; // vertices are ordered by level, so this is the highest
  if (v0 < 0)
    throw InternalError("root has no J-invariant vertex");
  const auto c = leaf_sets(r);
  std::vector<int> s;
  auto best_level = [&] {
    int l = r.max_level() + 1;
    for (int v : s)
      l = std::min(l, r.level(v));
    return l;
  };
  if (c[v0].size() == 1) {
    s.push_back(*c[v0].begin());
  } else {
    const auto p = top_pair(r, c[v0]);
    if (!p)
      throw InternalError("no swapped pair under the top invariant vertex");
    s.push_back(p->first);
    s.push_back(p->second);
  }
  int prev = v0;
  for (int v = r.successor(v0); v >= 0; v = r.successor(v)) {
    if (c[v].size() == c[prev].size()) {
      prev = v;
      continue;
    }
    prev = v;
    std::set<int> fresh;
    const int bar = best_level();
    for (int l : c[v])
      if (r.level(l) < bar)
        fresh.insert(l);
    if (auto p = top_pair(r, fresh)) {
      s.push_back(p->first);
      s.push_back(p->second);
    }
  }
  std::sort(s.begin(), s.end());
  return {r.subroot(s), s};
}

SymmetricReduction symmetric_reduction(const GradedRoot &input) {
  SymmetricReduction out;
  GradedRoot r = input;
  for (;;) {
    bool trivial = true;
    for (int v = 0; v < r.size(); ++v)
      trivial = trivial && r.involution(v) == v;
    if (trivial) {
      out.root = r.with_trivial_involution();
      out.complete = true;
      return out;
    }
    bool deleted = false;
    for (int v : r.leaves()) {
      const int jv = r.involution(v);
      if (jv <= v)
        continue;
      // Exclusive branch of v: up to the first vertex with another child.
      std::vector<int> branch{v};
      int u = r.successor(v);
      while (u >= 0 && r.children(u).size() == 1) {
        branch.push_back(u);
        u = r.successor(u);
      }
      if (u < 0)
        continue;
      const int steps = r.level(u) - r.level(v);
      int x = -1;
      for (int y : r.vertices_at_level(r.level(v))) {
        if (r.involution(y) != y)
          continue;
        int z = y;
        for (int i = 0; i < steps && z >= 0; ++i)
          z = r.successor(z);
        if (z == u) {
          x = y;
          break;
        }
      }
      if (x < 0)
        continue;
      std::set<int> drop;
      for (int b : branch) {
        drop.insert(b);
        drop.insert(r.involution(b));
      }
      std::vector<int> keep;
      for (int w = 0; w < r.size(); ++w)
        if (!drop.count(w))
          keep.push_back(w);
      r = r.subroot(keep);
      ++out.deletions;
      deleted = true;
      break;
    }
    if (!deleted) {
      out.root = r;
      out.obstruction = "no swapped leaf pair can be folded onto an invariant vertex of its level";
      return out;
    }
  }
}

int omega(const GradedUModule &m) { return m.omega(); }

GradedUModule connected_homology(const UComplex &x, const SearchLimits &limits) {
  return homology(connected_complex(x, limits));
}

GradedUModule root_connected_homology(const GradedRoot &root, bool cross_check, const SearchLimits &limits) {
  const GradedUModule h = homology(model_complex(monotone_subroot(root).root));
  if (cross_check) {
    const GradedUModule other = connected_homology(model_complex(root), limits);
    if (!(other == h))
      throw InternalError("monotone subroot " + h.to_string() + " disagrees with the complex reduction " +
                          other.to_string());
  }
  return h;
}

} // namespace hfb
