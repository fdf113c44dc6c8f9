#include "hfb/graded_root.hpp"

#include "hfb/errors.hpp"
#include "root_engines.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace hfb {

GradedRoot GradedRoot::from_parts(Rational base, std::vector<int> level, std::vector<int> succ,
                                  std::vector<LatticePoint> rep, std::vector<int> involution, RootEngine engine,
                                  bool exact) {
  const std::size_t n = level.size();
  if (succ.size() != n || rep.size() != n || (!involution.empty() && involution.size() != n))
    throw InternalError("GradedRoot: inconsistent vertex data");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    if (level[ua] != level[ub])
      return level[ua] < level[ub];
    return rep[ua] < rep[ub];
  });
  std::vector<int> new_id(n);
  for (std::size_t i = 0; i < n; ++i)
    new_id[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

  GradedRoot r;
  r.base_ = std::move(base);
  r.engine_ = engine;
  r.exact_ = exact;
  r.level_.resize(n);
  r.succ_.resize(n);
  r.rep_.resize(n);
  r.children_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto old = static_cast<std::size_t>(order[i]);
    r.level_[i] = level[old];
    r.succ_[i] = succ[old] < 0 ? -1 : new_id[static_cast<std::size_t>(succ[old])];
    r.rep_[i] = std::move(rep[old]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int s = r.succ_[i];
    if (s >= 0) {
      if (r.level_[static_cast<std::size_t>(s)] != r.level_[i] + 1)
        throw InternalError("GradedRoot: successor is not one level up");
      r.children_[static_cast<std::size_t>(s)].push_back(static_cast<int>(i));
    } else if (r.level_[i] != r.level_.back()) {
      throw InternalError("GradedRoot: vertex below the top level without successor");
    }
  }
  if (!involution.empty()) {
    std::vector<int> inv(n);
    for (std::size_t i = 0; i < n; ++i)
      inv[i] = new_id[static_cast<std::size_t>(involution[static_cast<std::size_t>(order[i])])];
    return r.with_involution(std::move(inv));
  }
  return r;
}

std::vector<int> GradedRoot::leaves() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (children(v).empty())
      out.push_back(v);
  return out;
}

std::vector<int> GradedRoot::vertices_at_level(int n) const {
  auto lo = std::lower_bound(level_.begin(), level_.end(), n);
  auto hi = std::upper_bound(level_.begin(), level_.end(), n);
  std::vector<int> out;
  for (auto it = lo; it != hi; ++it)
    out.push_back(static_cast<int>(it - level_.begin()));
  return out;
}

int GradedRoot::truncation_level() const {
  if (level_.empty())
    return 0;
  int l = max_level();
  if (vertices_at_level(l).size() != 1)
    return l + 1;
  while (l > min_level() && vertices_at_level(l - 1).size() == 1)
    --l;
  return l;
}

bool GradedRoot::complete() const { return exact_ && !level_.empty() && max_level() - truncation_level() >= 2; }

int GradedRoot::top() const {
  auto v = vertices_at_level(max_level());
  if (v.size() != 1)
    throw InstabilityError("graded root: top level of the truncation is not connected (level " +
                           std::to_string(max_level()) + ")");
  return v.front();
}

GradedRoot GradedRoot::with_involution(std::vector<int> inv) const {
  if (inv.size() != level_.size())
    throw InternalError("involution: wrong size");
  for (int v = 0; v < size(); ++v) {
    const int j = inv[static_cast<std::size_t>(v)];
    if (j < 0 || j >= size() || inv[static_cast<std::size_t>(j)] != v)
      throw InternalError("involution: not an involution");
    if (level(j) != level(v))
      throw InternalError("involution: does not preserve weights");
    const int s = successor(v), sj = successor(j);
    if ((s < 0) != (sj < 0) || (s >= 0 && inv[static_cast<std::size_t>(s)] != sj))
      throw InternalError("involution: does not commute with the successor map");
  }
  GradedRoot r = *this;
  r.inv_ = std::move(inv);
  return r;
}

GradedRoot GradedRoot::with_trivial_involution() const {
  std::vector<int> id(level_.size());
  std::iota(id.begin(), id.end(), 0);
  return with_involution(std::move(id));
}

GradedRoot GradedRoot::subroot(const std::vector<int> &keep) const {
  std::vector<char> in(level_.size(), 0);
  for (int v : keep)
    for (int u = v; u >= 0 && !in[static_cast<std::size_t>(u)]; u = successor(u))
      in[static_cast<std::size_t>(u)] = 1;
  std::vector<int> level, succ, inv, new_id(level_.size(), -1);
  std::vector<LatticePoint> rep;
  for (int v = 0; v < size(); ++v)
    if (in[static_cast<std::size_t>(v)])
      new_id[static_cast<std::size_t>(v)] = static_cast<int>(level.size()), level.push_back(this->level(v)),
      rep.push_back(representative(v));
  for (int v = 0; v < size(); ++v) {
    if (!in[static_cast<std::size_t>(v)])
      continue;
    succ.push_back(successor(v) < 0 ? -1 : new_id[static_cast<std::size_t>(successor(v))]);
    if (has_involution()) {
      const int j = new_id[static_cast<std::size_t>(involution(v))];
      if (j < 0)
        throw InternalError("subroot: vertex set is not invariant");
      inv.push_back(j);
    }
  }
  GradedRoot r = from_parts(base_, level, succ, rep, inv, engine_, exact_);
  r.radius_ = radius_;
  return r;
}

GradedRoot GradedRoot::truncated(int max) const {
  std::vector<int> level, succ, inv, new_id(level_.size(), -1);
  std::vector<LatticePoint> rep;
  for (int v = 0; v < size(); ++v)
    if (this->level(v) <= max)
      new_id[static_cast<std::size_t>(v)] = static_cast<int>(level.size()), level.push_back(this->level(v)),
      rep.push_back(representative(v));
  for (int v = 0; v < size(); ++v) {
    if (this->level(v) > max)
      continue;
    succ.push_back(this->level(v) == max || successor(v) < 0 ? -1 : new_id[static_cast<std::size_t>(successor(v))]);
    if (has_involution())
      inv.push_back(new_id[static_cast<std::size_t>(involution(v))]);
  }
  GradedRoot r = from_parts(base_, level, succ, rep, inv, engine_, exact_);
  r.radius_ = radius_;
  return r;
}

GradedRoot GradedRoot::extended(int max) const {
  if (max <= max_level())
    return *this;
  const int t = top();
  std::vector<int> level = level_, succ = succ_, inv = inv_;
  std::vector<LatticePoint> rep = rep_;
  int prev = t;
  for (int l = max_level() + 1; l <= max; ++l) {
    const int id = static_cast<int>(level.size());
    level.push_back(l);
    succ.push_back(-1);
    rep.push_back(rep_[static_cast<std::size_t>(t)]);
    if (!inv.empty())
      inv.push_back(id);
    succ[static_cast<std::size_t>(prev)] = id;
    prev = id;
  }
  GradedRoot r = from_parts(base_, level, succ, rep, inv, engine_, exact_);
  r.radius_ = radius_;
  return r;
}

Rational root_base_weight(const PlumbingTree &t, const CharVector &k) {
  return (k_square(t, k) + t.size()) / 4;
}

Rational d_invariant(const GradedRoot &root) {
  if (root.size() == 0)
    throw InvalidInputError("d_invariant: empty root");
  return root.weight(0);
}

namespace {

std::string weight_text(const Rational &w) {
  return to_string(w);
}

struct Encoder {
  const GradedRoot &r;
  int cut;
  std::map<int, std::string> memo_plain, memo_sym;

  std::string plain(int v) {
    if (auto it = memo_plain.find(v); it != memo_plain.end())
      return it->second;
    std::vector<std::string> kids;
    for (int c : r.children(v))
      kids.push_back(plain(c));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + weight_text(r.weight(v));
    for (auto &k : kids)
      s += k;
    s += ")";
    return memo_plain[v] = s;
  }
  // v is fixed by the involution
  std::string sym(int v) {
    if (auto it = memo_sym.find(v); it != memo_sym.end())
      return it->second;
    std::vector<std::string> kids;
    for (int c : r.children(v)) {
      const int j = r.involution(c);
      if (j == c)
        kids.push_back("f" + sym(c));
      else if (c < j)
        kids.push_back("p" + plain(c));
    }
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + weight_text(r.weight(v));
    for (auto &k : kids)
      s += k;
    s += ")";
    return memo_sym[v] = s;
  }
};

} // namespace

std::string canonical_form(const GradedRoot &root, std::optional<Rational> floor) {
  if (root.size() == 0)
    return "()";
  int cut = root.max_level();
  if (floor) {
    const Rational steps = (root.base_weight() - *floor) / 2;
    if (denominator(steps) != 1)
      throw InvalidInputError("canonical_form: floor weight not in the weight lattice of the root");
    cut = static_cast<int>(numerator(steps));
    if (cut > root.max_level())
      throw InvalidInputError("canonical_form: floor below the truncation");
  }
  const GradedRoot r = root.truncated(cut);
  Encoder enc{r, cut, {}, {}};
  std::vector<std::string> tops;
  for (int v : r.vertices_at_level(r.max_level())) {
    if (!r.has_involution())
      tops.push_back(enc.plain(v));
    else if (r.involution(v) == v)
      tops.push_back("f" + enc.sym(v));
    else if (v < r.involution(v))
      tops.push_back("p" + enc.plain(v));
  }
  std::sort(tops.begin(), tops.end());
  std::string s = r.has_involution() ? "J" : "";
  for (auto &t : tops)
    s += t;
  return s;
}

bool isomorphic(const GradedRoot &a, const GradedRoot &b) {
  if (a.size() == 0 || b.size() == 0)
    return a.size() == b.size();
  const Rational fa = a.weight(a.size() - 1), fb = b.weight(b.size() - 1);
  const Rational floor = fa > fb ? fa : fb;
  const Rational da = (a.base_weight() - floor) / 2, db = (b.base_weight() - floor) / 2;
  if (denominator(da) != 1 || denominator(db) != 1)
    return false;
  return canonical_form(a, floor) == canonical_form(b, floor);
}

std::string render_dot(const GradedRoot &root) {
  std::ostringstream os;
  os << "digraph graded_root {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=circle, fontsize=10];\n";
  for (int v = 0; v < root.size(); ++v)
    os << "  v" << v << " [label=\"" << weight_text(root.weight(v)) << "\"];\n";
  for (int v = 0; v < root.size(); ++v)
    if (root.successor(v) >= 0)
      os << "  v" << v << " -> v" << root.successor(v) << ";\n";
  if (root.has_involution())
    for (int v = 0; v < root.size(); ++v)
      if (root.involution(v) > v)
        os << "  v" << v << " -> v" << root.involution(v)
           << " [style=dashed, dir=none, constraint=false];\n";
  os << "}\n";
  return os.str();
}

namespace {

GradedRoot transfer_involution(const GradedRoot &root, const GradedRoot &mapped) {
  if (mapped.size() != root.size())
    throw InternalError("involution: rebuilt root differs from the input root");
  for (int v = 0; v < root.size(); ++v)
    if (mapped.level(v) != root.level(v) || mapped.successor(v) != root.successor(v))
      throw InternalError("involution: rebuilt root differs from the input root");
  return root.with_involution(mapped.involution());
}

} // namespace

GradedRoot lattice_involution(const PlumbingTree &t, const CharVector &k, const GradedRoot &root) {
  const auto pd = poincare_dual(t, k);
  if (!pd)
    throw InvalidInputError("lattice_involution: Q^{-1}k is not integral");
  switch (root.engine()) {
  case RootEngine::Star: {
    const long long pc = (*pd)[static_cast<std::size_t>(t.centre())];
    detail::CentralMap m = [pc](long long n) { return -n - pc; };
    return transfer_involution(root, detail::build_root_star_mapped(t, k, root.max_level(), &m));
  }
  case RootEngine::Box: {
    LatticeMap m = [&](const LatticePoint &l) { return reflect(l, *pd); };
    return transfer_involution(root, build_root_box_once(t, k, root.max_level(), root.build_radius(), &m));
  }
  default:
    throw InvalidInputError("lattice_involution: root has no lattice provenance");
  }
}

GradedRoot graph_involution(const PlumbingTree &t, const CharVector &k, const GradedRoot &root) {
  if (!t.has_automorphism())
    return root.with_trivial_involution();
  if (permute(t, k) != k)
    throw InvalidInputError("graph_involution: characteristic vector is not invariant");
  switch (root.engine()) {
  case RootEngine::Star: {
    if (t.automorphism()[static_cast<std::size_t>(t.centre())] != t.centre())
      throw InvalidInputError("graph_involution: automorphism moves the central vertex");
    detail::CentralMap m = [](long long n) { return n; };
    return transfer_involution(root, detail::build_root_star_mapped(t, k, root.max_level(), &m));
  }
  case RootEngine::Box: {
    LatticeMap m = [&](const LatticePoint &l) { return permute(t, l); };
    return transfer_involution(root, build_root_box_once(t, k, root.max_level(), root.build_radius(), &m));
  }
  default:
    throw InvalidInputError("graph_involution: root has no lattice provenance");
  }
}

} // namespace hfb
