#include "hfb/local_equivalence.hpp"

#include "hfb/errors.hpp"
#include "pieces.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hfb {

using detail::CycleData;
using detail::MapVars;
using detail::MatrixEquations;
using detail::Pieces;

namespace {

// Tower probe: a cycle z of x in a deep grading t generating the localised
// homology, and a linear functional on y_t that detects the tower class.
struct Probe {
  long long t = 0;
  F2Vector z;
  F2Vector lambda; // lambda(e_q) for each position q of y_t
};

std::optional<Probe> make_probe(const UComplex &x, const UComplex &y) {
  CycleData dx(x), dy(y);
  const long long tx = dx.deep_tower_grading(), ty = dy.deep_tower_grading();
  if ((tx - ty) % 2 != 0)
    return std::nullopt;
  Probe p;
  p.t = std::min(tx, ty);
  for (const auto &z : dx.cycles(p.t).basis())
    if (!dx.boundaries(p.t).contains(z)) {
      p.z = z;
      break;
    }
  const F2Subspace &b = dy.boundaries(p.t);
  F2Vector tower;
  for (const auto &z : dy.cycles(p.t).basis())
    if (!b.contains(z)) {
      tower = b.reduce(z);
      break;
    }
  const std::size_t pivot = tower.lowest();
  p.lambda = F2Vector(dy.pieces().dim(p.t));
  for (std::size_t q = 0; q < p.lambda.size(); ++q) {
    F2Vector e(p.lambda.size());
    e.set(q);
    // Reduction against b is linear; on cycles it leaves either 0 or tower.
    F2Vector r = b.reduce(e);
    if (r.get(pivot))
      p.lambda.set(q);
  }
  return p;
}

struct LocalSystem {
  MapVars f, h;
  F2LinearSystem sys;
  Pieces px, py;
};

// Unknowns: entries of f (degree 0) then of the homotopy h (degree 1) with
// df = fd, iota f + f iota = dh + hd and lambda(f z) = 1.
std::optional<LocalSystem> local_system(const UComplex &x, const UComplex &y) {
  auto probe = make_probe(x, y);
  if (!probe)
    return std::nullopt;
  MapVars f(y.degrees(), x.degrees(), 0, 0);
  MapVars h(y.degrees(), x.degrees(), 1, f.count());
  LocalSystem ls{f, h, F2LinearSystem(f.count() + h.count()), Pieces(x.degrees()), Pieces(y.degrees())};
  const std::size_t n = f.count() + h.count();
  MatrixEquations chain(y.size(), x.size(), n);
  chain.add_left(y.differential(), f);
  chain.add_right(f, x.differential());
  MatrixEquations comm(y.size(), x.size(), n);
  comm.add_left(y.iota(), f);
  comm.add_right(f, x.iota());
  comm.add_left(y.differential(), h);
  comm.add_right(h, x.differential());
  if (!chain.feed(ls.sys) || !comm.feed(ls.sys))
    return std::nullopt;
  F2Vector c(n);
  for (std::size_t u = 0; u < f.count(); ++u) {
    const auto [i, j] = f.entries[u];
    const int pj = ls.px.pos(probe->t, j);
    if (pj >= 0 && probe->z.get(static_cast<std::size_t>(pj)) &&
        probe->lambda.get(static_cast<std::size_t>(ls.py.pos(probe->t, i))))
      c.flip(u);
  }
  if (!ls.sys.add(c, true))
    return std::nullopt;
  return ls;
}

// f(v) = 0 for a piece vector v of x_t.
bool add_kernel_constraint(LocalSystem &ls, long long t, const F2Vector &v) {
  const std::size_t n = ls.sys.unknowns();
  std::vector<F2Vector> rows(ls.py.dim(t), F2Vector(n));
  for (std::size_t u = 0; u < ls.f.count(); ++u) {
    const auto [i, j] = ls.f.entries[u];
    const int pj = ls.px.pos(t, j);
    if (pj >= 0 && v.get(static_cast<std::size_t>(pj)))
      rows[static_cast<std::size_t>(ls.py.pos(t, i))].flip(u);
  }
  for (const auto &r : rows)
    if (!r.is_zero() && !ls.sys.add(r, false))
      return false;
  return true;
}

UComplex same_frame(const UComplex &y, const UComplex &x) {
  auto r = detail::rebase(y, x.shift());
  if (!r)
    throw InvalidInputError("complexes live in incompatible grading classes");
  return *r;
}

std::vector<F2Vector> matrix_key(const F2Matrix &m) {
  std::vector<F2Vector> k;
  for (std::size_t r = 0; r < m.rows(); ++r)
    k.push_back(m.row(r));
  return k;
}

struct KeyLess {
  bool operator()(const std::vector<F2Vector> &a, const std::vector<F2Vector> &b) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].words() != b[i].words())
        return a[i].words() < b[i].words();
    return false;
  }
};

// Idempotent power of an endomorphism: the powers of f are eventually
// periodic, and f^m is idempotent for m a multiple of the period past the index.
F2Matrix idempotent_power(const F2Matrix &f) {
  std::map<std::vector<F2Vector>, std::size_t, KeyLess> seen;
  std::vector<F2Matrix> powers{f};
  seen.emplace(matrix_key(f), 1);
  for (std::size_t k = 2; k < 100000; ++k) {
    powers.push_back(powers.back() * f);
    auto [it, fresh] = seen.emplace(matrix_key(powers.back()), k);
    if (!fresh) {
      const std::size_t index = it->second, period = k - index;
      const std::size_t m = ((index + period - 1) / period) * period;
      return powers[m - 1];
    }
  }
  throw InternalError("powers of a self-map did not cycle");
}

// Homogeneous element given by generator coefficients (exponents implicit) in
// degree t, as a piece vector.
F2Vector to_piece(const Pieces &p, long long t, const F2Vector &coeffs) {
  F2Vector v(p.dim(t));
  for (std::size_t i : coeffs.support()) {
    const int q = p.pos(t, i);
    if (q < 0)
      throw InternalError("element is not homogeneous");
    v.set(static_cast<std::size_t>(q));
  }
  return v;
}

} // namespace

bool is_local_map(const F2Matrix &f, const UComplex &x, const UComplex &y0) {
  const UComplex y = same_frame(y0, x);
  if (f.rows() != y.size() || f.cols() != x.size() || !is_homogeneous(f, y.degrees(), x.degrees(), 0))
    return false;
  if (!(y.differential() * f + f * x.differential()).is_zero())
    return false;
  if (!detail::null_homotopic(y.iota() * f + f * x.iota(), x, y))
    return false;
  auto probe = make_probe(x, y);
  if (!probe)
    return false;
  Pieces px(x.degrees()), py(y.degrees());
  const F2Vector image = px.restrict(f, py, probe->t, 0).apply(probe->z);
  bool value = false;
  for (std::size_t q : image.support())
    value ^= probe->lambda.get(q);
  return value;
}

std::optional<F2Matrix> find_local_map(const UComplex &x, const UComplex &y0) {
  const UComplex y = same_frame(y0, x);
  auto ls = local_system(x, y);
  if (!ls)
    return std::nullopt;
  auto sol = ls->sys.any_solution();
  if (!sol)
    return std::nullopt;
  return ls->f.value(*sol);
}

bool locally_equivalent(const UComplex &x, const UComplex &y) {
  return find_local_map(x, y).has_value() && find_local_map(y, x).has_value();
}

std::vector<F2Matrix> self_local_equivalences(const UComplex &x, const SearchLimits &limits) {
  if (x.size() > limits.rank_bound)
    throw RankBoundError("complex of rank " + std::to_string(x.size()) + " exceeds the enumeration bound " +
                         std::to_string(limits.rank_bound));
  auto ls = local_system(x, x);
  if (!ls)
    throw InternalError("identity is not a self-local equivalence");
  auto sol = ls->sys.any_solution();
  if (!sol)
    throw InternalError("identity is not a self-local equivalence");
  // Project the solution space onto the f unknowns.
  const std::size_t nf = ls->f.count();
  auto project = [&](const F2Vector &v) {
    F2Vector p(nf);
    for (std::size_t u = 0; u < nf; ++u)
      if (v.get(u))
        p.set(u);
    return p;
  };
  F2Subspace dirs(nf);
  for (const auto &v : ls->sys.solution_space_basis())
    dirs.insert(project(v));
  if (dirs.dim() > limits.max_free_dim)
    throw RankBoundError("space of self-local equivalences has dimension " + std::to_string(dirs.dim()));
  const F2Vector base = project(*sol);
  std::vector<F2Matrix> out;
  const auto &basis = dirs.basis();
  for (std::size_t mask = 0; mask < (std::size_t{1} << basis.size()); ++mask) {
    F2Vector v = base;
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (mask >> b & 1u)
        v ^= basis[b];
    out.push_back(ls->f.value(v));
  }
  return out;
}

bool kernel_contained(const F2Matrix &f, const F2Matrix &g, const UComplex &x) {
  Pieces p(x.degrees());
  // Kernels are generated in gradings between the lowest and highest generator.
  for (long long t = p.min_deg(); t <= p.max_deg(); ++t) {
    const F2Matrix gt = p.restrict(g, p, t, 0);
    for (const auto &v : nullspace(p.restrict(f, p, t, 0)))
      if (!gt.apply(v).is_zero())
        return false;
  }
  return true;
}

std::size_t kernel_rank(const F2Matrix &f, const UComplex &x) {
  Pieces p(x.degrees());
  std::size_t r = 0;
  for (long long t : {p.min_deg() - 1, p.min_deg() - 2})
    r += nullspace(p.restrict(f, p, t, 0)).size();
  return r;
}

UComplex image_complex(const F2Matrix &f, const UComplex &x) {
  const F2Matrix h = idempotent_power(f);
  const std::size_t n = x.size();
  // Im(h) is a summand; its reduction mod U is the image of h mod U, spanned
  // by columns h(g_j). Lifting a basis of that gives an F[U]-basis.
  F2Subspace span(n);
  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < n; ++j) {
    F2Vector bar(n);
    for (std::size_t i : h.column(j).support())
      if (x.deg(i) == x.deg(j))
        bar.set(i);
    if (span.insert(bar))
      chosen.push_back(j);
  }
  const std::size_t m = chosen.size();
  std::vector<F2Vector> basis;
  std::vector<long long> deg;
  std::vector<std::string> names;
  for (std::size_t j : chosen) {
    basis.push_back(h.column(j));
    deg.push_back(x.deg(j));
    names.push_back(x.name(j));
  }
  Pieces p(x.degrees());
  // Coordinates of a homogeneous element of Im(h) in degree t.
  auto coords = [&](const F2Vector &elem, long long t) {
    std::vector<std::size_t> cols;
    for (std::size_t s = 0; s < m; ++s)
      if (allowed_entry(deg[s], t, 0))
        cols.push_back(s);
    F2Matrix a(p.dim(t), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const long long ds = deg[cols[c]];
      const F2Vector v = p.times_u(to_piece(p, ds, basis[cols[c]]), ds, (ds - t) / 2);
      for (std::size_t q : v.support())
        a.set(q, c);
    }
    auto sol = solve(a, to_piece(p, t, elem));
    if (!sol)
      throw InternalError("element is not in the image");
    F2Vector out(m);
    for (std::size_t c : sol->support())
      out.set(cols[c]);
    return out;
  };
  F2Matrix d(m, m), iota(m, m);
  for (std::size_t s = 0; s < m; ++s) {
    const F2Vector ds = coords(x.differential().apply(basis[s]), deg[s] - 1);
    const F2Vector is = coords(h.apply(x.iota().apply(basis[s])), deg[s]);
    for (std::size_t r : ds.support())
      d.set(r, s);
    for (std::size_t r : is.support())
      iota.set(r, s);
  }
  return UComplex(x.shift(), deg, d, iota, names);
}

UComplex connected_complex(const UComplex &x0, const SearchLimits &limits) {
  UComplex x = x0;
  for (;;) {
    auto base = local_system(x, x);
    if (!base)
      throw InternalError("identity is not a self-local equivalence");
    Pieces p(x.degrees());
    std::set<long long> degrees(x.degrees().begin(), x.degrees().end());
    std::optional<F2Matrix> found;
    // A non-trivial kernel contains an element not divisible by U, so in the
    // degree of some generator.
    for (long long t : degrees) {
      const auto &gens = p.gens(t);
      if (gens.size() > limits.max_piece_dim)
        throw RankBoundError("graded piece of dimension " + std::to_string(gens.size()) + " is too large");
      F2Vector unit(gens.size());
      for (std::size_t q = 0; q < gens.size(); ++q)
        if (x.deg(gens[q]) == t)
          unit.set(q);
      for (std::size_t mask = 1; mask < (std::size_t{1} << gens.size()) && !found; ++mask) {
        F2Vector v(gens.size());
        bool has_unit = false;
        for (std::size_t q = 0; q < gens.size(); ++q)
          if (mask >> q & 1u) {
            v.set(q);
            has_unit = has_unit || unit.get(q);
          }
        if (!has_unit)
          continue;
        LocalSystem ls = *base;
        if (!add_kernel_constraint(ls, t, v))
          continue;
        if (auto sol = ls.sys.any_solution())
          found = ls.f.value(*sol);
      }
      if (found)
        break;
    }
    if (!found)
      return x;
    x = image_complex(*found, x);
  }
}

GradedUModule connected_homology_bruteforce(const UComplex &x, const SearchLimits &limits) {
  const auto maps = self_local_equivalences(x, limits);
  // Distinct kernels, each with one representative map.
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    bool dup = false;
    for (std::size_t r : reps)
      if (kernel_contained(maps[i], maps[r], x) && kernel_contained(maps[r], maps[i], x)) {
        dup = true;
        break;
      }
    if (!dup)
      reps.push_back(i);
  }
  std::optional<GradedUModule> result;
  for (std::size_t a : reps) {
    bool maximal = true;
    for (std::size_t b : reps)
      if (a != b && kernel_contained(maps[a], maps[b], x) && !kernel_contained(maps[b], maps[a], x)) {
        maximal = false;
        break;
      }
    if (!maximal)
      continue;
    const GradedUModule h = homology(image_complex(maps[a], x));
    if (result && !(*result == h))
      throw InternalError("maximal self-local equivalences give different connected homology");
    result = h;
  }
  if (!result)
    throw InternalError("no maximal self-local equivalence found");
  return *result;
}

} // namespace hfb
