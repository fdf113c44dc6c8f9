#pragma once

// Sublevel-set sweep shared by the box and star engines. Points carry integer
// values; components of {value <= N} are tracked with union-find as N grows.

#include "hfb/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace hfb::detail {

struct SweepRoot {
  std::vector<int> level;
  std::vector<int> succ;
  std::vector<std::size_t> rep; // point index with minimal (value, index)
  std::vector<int> inv;         // filled when a point map was supplied
  int components_at_top = 0;
  // levels (from the first) whose sublevel set was connected, consecutively up
  // to the last processed level
  int connected_run = 0;
};

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), rep_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    std::iota(rep_.begin(), rep_.end(), std::uint32_t{0});
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // rank-free union; keeps the smaller representative order position
  bool unite(std::uint32_t a, std::uint32_t b, const std::vector<std::uint32_t> &position) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (position[rep_[b]] < position[rep_[a]])
      std::swap(a, b);
    parent_[b] = a;
    return true;
  }
  std::uint32_t rep(std::uint32_t root) const { return rep_[root]; }

private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> rep_;
};

/// values: per point; order: point indices sorted by (value, index).
/// neighbours(p, out) appends adjacent point indices. map(p) returns the image
/// point index (or -1 when it falls outside the enumerated set).
/// stop(level, components, run) is asked after each level whether to finish.
template <class Nbr, class Map, class Stop>
SweepRoot sweep(const std::vector<long long> &values, const std::vector<std::uint32_t> &order, Nbr neighbours,
                Map map, bool use_map, Stop stop) {
  SweepRoot out;
  if (order.empty())
    return out;
  const std::size_t npts = values.size();
  std::vector<std::uint32_t> position(npts, UINT32_MAX);
  for (std::size_t i = 0; i < order.size(); ++i)
    position[order[i]] = static_cast<std::uint32_t>(i);
  UnionFind uf(npts);
  std::vector<char> added(npts, 0);
  std::vector<std::uint32_t> nb;
  std::vector<std::pair<std::uint32_t, int>> prev; // (root rep point, vertex id)
  std::size_t cursor = 0;
  long long level = values[order[0]];
  int run = 0;
  for (;; ++level) {
    std::vector<std::uint32_t> fresh;
    while (cursor < order.size() && values[order[cursor]] == level) {
      const std::uint32_t p = order[cursor++];
      added[p] = 1;
      fresh.push_back(p);
      nb.clear();
      neighbours(p, nb);
      for (auto q : nb)
        if (added[q])
          uf.unite(p, q, position);
    }
    std::vector<std::uint32_t> roots;
    roots.reserve(prev.size() + fresh.size());
    for (auto &[r, id] : prev)
      roots.push_back(uf.find(r));
    for (auto p : fresh)
      roots.push_back(uf.find(p));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

    const int first = static_cast<int>(out.level.size());
    for (auto r : roots) {
      out.level.push_back(static_cast<int>(level));
      out.succ.push_back(-1);
      out.rep.push_back(uf.rep(r));
    }
    auto vertex_of = [&](std::uint32_t root) {
      auto it = std::lower_bound(roots.begin(), roots.end(), root);
      return first + static_cast<int>(it - roots.begin());
    };
    for (auto &[r, id] : prev)
      out.succ[static_cast<std::size_t>(id)] = vertex_of(uf.find(r));
    if (use_map) {
      out.inv.resize(out.level.size(), -1);
      for (std::size_t i = 0; i < roots.size(); ++i) {
        const long long image = map(uf.rep(roots[i]));
        if (image < 0 || !added[static_cast<std::size_t>(image)])
          throw InstabilityError("sweep: image of a representative lies outside the enumerated region");
        out.inv[static_cast<std::size_t>(first) + i] = vertex_of(uf.find(static_cast<std::uint32_t>(image)));
      }
    }
    prev.clear();
    for (std::size_t i = 0; i < roots.size(); ++i)
      prev.emplace_back(roots[i], first + static_cast<int>(i));
    run = roots.size() == 1 ? run + 1 : 0;
    out.components_at_top = static_cast<int>(roots.size());
    out.connected_run = run;
    if (stop(level, static_cast<int>(roots.size()), run))
      break;
  }
  return out;
}

} // namespace hfb::detail
