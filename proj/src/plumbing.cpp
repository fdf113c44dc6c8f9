#include "hfb/plumbing.hpp"

#include "hfb/errors.hpp"
#include "hfb/f2.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace hfb {

PlumbingTree::PlumbingTree(std::vector<long> ids, std::vector<long> weights,
                           const std::vector<std::pair<long, long>> &edges,
                           const std::optional<std::vector<std::pair<long, long>>> &automorphism)
    : ids_(std::move(ids)), weights_(std::move(weights)) {
  if (ids_.size() != weights_.size())
    throw InvalidInputError("plumbing: ids and weights differ in length");
  if (ids_.empty())
    throw InvalidInputError("plumbing: empty tree");
  std::map<long, int> index;
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (!index.emplace(ids_[i], static_cast<int>(i)).second)
      throw InvalidInputError("plumbing: duplicate vertex id " + std::to_string(ids_[i]));
  auto lookup = [&](long id) {
    auto it = index.find(id);
    if (it == index.end())
      throw InvalidInputError("plumbing: unknown vertex id " + std::to_string(id));
    return it->second;
  };
  for (auto [a, b] : edges)
    edges_.emplace_back(lookup(a), lookup(b));
  if (automorphism) {
    aut_.assign(ids_.size(), -1);
    for (auto [a, b] : *automorphism)
      aut_[static_cast<std::size_t>(lookup(a))] = lookup(b);
    // unlisted vertices are fixed
    for (std::size_t i = 0; i < aut_.size(); ++i)
      if (aut_[i] < 0)
        aut_[i] = static_cast<int>(i);
  }
  validate_and_index();
}

void PlumbingTree::validate_and_index() {
  const std::size_t n = weights_.size();
  adj_.assign(n, {});
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  if (edges_.size() + 1 != n)
    throw InvalidInputError("plumbing: a tree on n vertices has n-1 edges");
  for (auto &[a, b] : edges_) {
    if (a == b)
      throw InvalidInputError("plumbing: self-loop");
    const int ra = find(a), rb = find(b);
    if (ra == rb)
      throw InvalidInputError("plumbing: edges contain a cycle");
    parent[static_cast<std::size_t>(ra)] = rb;
    if (a > b)
      std::swap(a, b);
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto &nb : adj_)
    std::sort(nb.begin(), nb.end());
  if (!aut_.empty()) {
    if (aut_.size() != n)
      throw InvalidInputError("plumbing: automorphism has wrong size");
    for (std::size_t v = 0; v < n; ++v) {
      const int s = aut_[v];
      if (s < 0 || static_cast<std::size_t>(s) >= n)
        throw InvalidInputError("plumbing: automorphism out of range");
      if (aut_[static_cast<std::size_t>(s)] != static_cast<int>(v))
        throw InvalidInputError("plumbing: automorphism is not an involution");
      if (weights_[static_cast<std::size_t>(s)] != weights_[v])
        throw InvalidInputError("plumbing: automorphism does not preserve weights");
    }
    for (auto [a, b] : edges_) {
      int sa = aut_[static_cast<std::size_t>(a)], sb = aut_[static_cast<std::size_t>(b)];
      const auto &nb = adj_[static_cast<std::size_t>(sa)];
      if (!std::binary_search(nb.begin(), nb.end(), sb))
        throw InvalidInputError("plumbing: automorphism does not preserve adjacency");
    }
  }
}

PlumbingTree PlumbingTree::star(long centre, const std::vector<std::vector<long>> &legs) {
  std::vector<long> ids{0}, weights{centre};
  std::vector<std::pair<long, long>> edges;
  for (const auto &leg : legs) {
    long prev = 0;
    for (long w : leg) {
      const long id = static_cast<long>(ids.size());
      ids.push_back(id);
      weights.push_back(w);
      edges.emplace_back(prev, id);
      prev = id;
    }
  }
  return PlumbingTree(ids, weights, edges);
}

PlumbingTree PlumbingTree::chain(const std::vector<long> &weights) {
  std::vector<long> ids(weights.size());
  std::iota(ids.begin(), ids.end(), 0L);
  std::vector<std::pair<long, long>> edges;
  for (std::size_t i = 1; i < weights.size(); ++i)
    edges.emplace_back(static_cast<long>(i - 1), static_cast<long>(i));
  return PlumbingTree(ids, weights, edges);
}

int PlumbingTree::index_of(long id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end())
    throw InvalidInputError("plumbing: unknown vertex id " + std::to_string(id));
  return static_cast<int>(it - ids_.begin());
}

PlumbingTree PlumbingTree::with_automorphism(const std::vector<int> &perm) const {
  PlumbingTree t = *this;
  t.aut_ = perm;
  t.validate_and_index();
  return t;
}

bool PlumbingTree::is_star_shaped() const {
  int high = 0;
  for (const auto &nb : adj_)
    if (nb.size() >= 3)
      ++high;
  return high <= 1;
}

int PlumbingTree::centre() const {
  int best = 0;
  for (int v = 1; v < size(); ++v)
    if (adj_[static_cast<std::size_t>(v)].size() > adj_[static_cast<std::size_t>(best)].size())
      best = v;
  return best;
}

IntMatrix intersection_form(const PlumbingTree &t) {
  const int n = t.size();
  IntMatrix q = IntMatrix::Zero(n, n);
  for (int v = 0; v < n; ++v)
    q(v, v) = t.weight(v);
  for (auto [a, b] : t.edges())
    q(a, b) = q(b, a) = 1;
  return q;
}

void require_negative_definite(const PlumbingTree &t) {
  if (!is_negative_definite(intersection_form(t)))
    throw DefinitenessError("plumbing: intersection form is not negative definite");
}

CharVector canonical_char(const PlumbingTree &t) {
  CharVector k(static_cast<std::size_t>(t.size()));
  for (int v = 0; v < t.size(); ++v)
    k[static_cast<std::size_t>(v)] = -2 - t.weight(v);
  return k;
}

bool is_characteristic(const PlumbingTree &t, const CharVector &k) {
  if (k.size() != static_cast<std::size_t>(t.size()))
    return false;
  for (int v = 0; v < t.size(); ++v)
    if ((k[static_cast<std::size_t>(v)] - t.weight(v)) % 2 != 0)
      return false;
  return true;
}

long long self_pairing(const PlumbingTree &t, const LatticePoint &l) {
  long long s = 0;
  for (int v = 0; v < t.size(); ++v)
    s += t.weight(v) * l[static_cast<std::size_t>(v)] * l[static_cast<std::size_t>(v)];
  for (auto [a, b] : t.edges())
    s += 2 * l[static_cast<std::size_t>(a)] * l[static_cast<std::size_t>(b)];
  return s;
}

long long chi(const PlumbingTree &t, const CharVector &k, const LatticePoint &l) {
  long long kl = 0;
  for (std::size_t v = 0; v < l.size(); ++v)
    kl += k[v] * l[v];
  const long long twice = kl + self_pairing(t, l);
  if (twice % 2 != 0)
    throw InternalError("chi: odd value, k is not characteristic");
  return -twice / 2;
}

namespace {

IntVector to_int_vector(const std::vector<long long> &x) {
  IntVector out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = x[i];
  return out;
}

} // namespace

Rational k_square(const PlumbingTree &t, const CharVector &k) {
  const IntVector kv = to_int_vector(k);
  RationalVector x = solve_exact(intersection_form(t), kv);
  Rational s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    s += Rational(kv(i)) * x(i);
  return s;
}

std::optional<LatticePoint> poincare_dual(const PlumbingTree &t, const CharVector &k) {
  auto x = as_integral(solve_exact(intersection_form(t), to_int_vector(k)));
  if (!x)
    return std::nullopt;
  LatticePoint out(static_cast<std::size_t>(t.size()));
  for (int v = 0; v < t.size(); ++v)
    out[static_cast<std::size_t>(v)] = static_cast<long long>((*x)(v));
  return out;
}

std::vector<int> wu_class(const PlumbingTree &t) {
  const int n = t.size();
  F2Matrix q(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  F2Vector diag(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    if (t.weight(v) % 2 != 0) {
      q.set(static_cast<std::size_t>(v), static_cast<std::size_t>(v));
      diag.set(static_cast<std::size_t>(v));
    }
  for (auto [a, b] : t.edges()) {
    q.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    q.set(static_cast<std::size_t>(b), static_cast<std::size_t>(a));
  }
  // The diagonal of a symmetric form mod 2 is always in its column span.
  auto w = solve(q, diag);
  if (!w)
    throw InternalError("wu_class: inconsistent mod-2 system");
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    out[static_cast<std::size_t>(v)] = w->get(static_cast<std::size_t>(v)) ? 1 : 0;
  return out;
}

Rational mu_bar(const PlumbingTree &t) {
  const auto w = wu_class(t);
  const LatticePoint wl(w.begin(), w.end());
  const long long w2 = self_pairing(t, wl);
  const int sign = signature(intersection_form(t));
  return Rational(sign - w2) / 8;
}

CharVector spin_char(const PlumbingTree &t) {
  CharVector k = canonical_char(t);
  if (poincare_dual(t, k))
    return k;
  const auto w = wu_class(t);
  CharVector qw(static_cast<std::size_t>(t.size()), 0);
  for (int v = 0; v < t.size(); ++v)
    qw[static_cast<std::size_t>(v)] = t.weight(v) * w[static_cast<std::size_t>(v)];
  for (auto [a, b] : t.edges()) {
    qw[static_cast<std::size_t>(a)] += w[static_cast<std::size_t>(b)];
    qw[static_cast<std::size_t>(b)] += w[static_cast<std::size_t>(a)];
  }
  return qw;
}

LatticePoint reflect(const LatticePoint &l, const LatticePoint &pd) {
  LatticePoint out(l.size());
  for (std::size_t i = 0; i < l.size(); ++i)
    out[i] = -l[i] - pd[i];
  return out;
}

LatticePoint permute(const PlumbingTree &t, const LatticePoint &l) {
  if (!t.has_automorphism())
    return l;
  LatticePoint out(l.size());
  for (std::size_t i = 0; i < l.size(); ++i)
    out[static_cast<std::size_t>(t.automorphism()[i])] = l[i];
  return out;
}

} // namespace hfb
