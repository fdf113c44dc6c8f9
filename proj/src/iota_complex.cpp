#include "hfb/iota_complex.hpp"

#include "hfb/errors.hpp"
#include "pieces.hpp"

#include <algorithm>
#include <sstream>

namespace hfb {

using detail::CycleData;
using detail::Pieces;

bool allowed_entry(long long row_deg, long long col_deg, long long s) {
  const long long e = row_deg - col_deg - s;
  return e >= 0 && e % 2 == 0;
}

bool is_homogeneous(const F2Matrix &m, const std::vector<long long> &row_deg, const std::vector<long long> &col_deg,
                    long long s) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j : m.row(i).support())
      if (!allowed_entry(row_deg[i], col_deg[j], s))
        return false;
  return true;
}

UComplex::UComplex(Rational shift, std::vector<long long> deg, F2Matrix d, F2Matrix iota,
                   std::vector<std::string> names)
    : shift_(std::move(shift)), deg_(std::move(deg)), d_(std::move(d)), iota_(std::move(iota)),
      names_(std::move(names)) {
  const std::size_t n = deg_.size();
  if (names_.empty())
    for (std::size_t i = 0; i < n; ++i)
      names_.push_back("x" + std::to_string(i));
  if (d_.rows() != n || d_.cols() != n || iota_.rows() != n || iota_.cols() != n || names_.size() != n)
    throw InternalError("complex dimensions disagree");
  if (!is_homogeneous(d_, deg_, deg_, -1))
    throw InternalError("differential is not homogeneous of degree -1");
  if (!is_homogeneous(iota_, deg_, deg_, 0))
    throw InternalError("iota is not homogeneous of degree 0");
  if (!(d_ * d_).is_zero())
    throw InternalError("d^2 != 0");
  if (!(d_ * iota_ + iota_ * d_).is_zero())
    throw InternalError("iota is not a chain map");
}

bool UComplex::iota_is_homotopy_involution() const {
  return detail::null_homotopic(iota_ * iota_ + F2Matrix::identity(size()), *this, *this);
}

UComplex UComplex::with_iota(F2Matrix iota) const { return UComplex(shift_, deg_, d_, std::move(iota), names_); }

UComplex UComplex::shifted(const Rational &by) const {
  UComplex c = *this;
  c.shift_ += by;
  return c;
}

std::string UComplex::to_string() const {
  std::ostringstream out;
  auto term = [&](std::size_t i, std::size_t j, long long s) {
    const long long e = (deg_[i] - deg_[j] - s) / 2;
    std::string t = e == 0 ? "" : (e == 1 ? "U" : "U^" + std::to_string(e));
    return t + names_[i];
  };
  auto image = [&](const F2Matrix &m, std::size_t j, long long s) {
    std::string r;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m.get(i, j))
        r += (r.empty() ? "" : " + ") + term(i, j, s);
    return r.empty() ? std::string("0") : r;
  };
  for (std::size_t j = 0; j < size(); ++j)
    out << names_[j] << " [" << hfb::to_string(grading(j)) << "]: d = " << image(d_, j, -1)
        << ", iota = " << image(iota_, j, 0) << "\n";
  return out.str();
}

UComplex model_complex(const GradedRoot &root) {
  const int n = root.size();
  // Top leaf of each subtree: highest weight, then smallest index.
  std::vector<int> best(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const auto &ch = root.children(v);
    if (ch.empty()) {
      best[v] = v;
      continue;
    }
    int b = best[ch.front()];
    for (int c : ch) {
      const int o = best[c];
      if (root.level(o) < root.level(b) || (root.level(o) == root.level(b) && o < b))
        b = o;
    }
    best[v] = b;
  }
  std::vector<int> leaves = root.leaves();
  std::vector<long long> deg;
  std::vector<std::string> names;
  std::vector<int> gen_of(static_cast<std::size_t>(n), -1);
  for (int v : leaves) {
    gen_of[v] = static_cast<int>(deg.size());
    deg.push_back(-2LL * root.level(v));
    names.push_back("v" + std::to_string(v));
  }
  struct Angle {
    int a, left, right;
  };
  std::vector<Angle> angles;
  for (int a = 0; a < n; ++a) {
    const auto &ch = root.children(a);
    for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
      angles.push_back({a, best[ch[i]], best[ch[i + 1]]});
      deg.push_back(-2LL * root.level(a) + 1);
      names.push_back("a" + std::to_string(a) + "." + std::to_string(i));
    }
  }
  const std::size_t size = deg.size();
  F2Matrix d(size, size), iota(size, size);
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const std::size_t col = leaves.size() + k;
    d.set(static_cast<std::size_t>(gen_of[angles[k].left]), col);
    d.set(static_cast<std::size_t>(gen_of[angles[k].right]), col);
  }
  for (int v : leaves) {
    const int w = root.involution(v);
    if (gen_of[w] < 0)
      throw InternalError("root involution does not preserve leaves");
    iota.set(static_cast<std::size_t>(gen_of[w]), static_cast<std::size_t>(gen_of[v]));
  }
  // Odd pieces contain only angles and d is injective on them, so the lift
  // of iota to an angle is the unique solution of d y = iota(d angle).
  Pieces p(deg);
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const std::size_t col = leaves.size() + k;
    const long long t = deg[col];
    F2Vector target(p.dim(t - 1));
    for (std::size_t r : d.column(col).support())
      for (std::size_t r2 : iota.column(r).support())
        target.flip(static_cast<std::size_t>(p.pos(t - 1, r2)));
    const F2Matrix dt = p.restrict(d, p, t, 1);
    auto y = solve(dt, target);
    if (!y)
      throw InternalError("root involution does not lift to the model complex");
    for (std::size_t q : y->support())
      iota.set(p.gens(t)[q], col);
  }
  return UComplex(root.base_weight(), deg, d, iota, names);
}

UComplex tensor(const UComplex &x, const UComplex &y) {
  const std::size_t n = x.size(), m = y.size();
  std::vector<long long> deg;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      deg.push_back(x.deg(i) + y.deg(j));
      names.push_back(x.name(i) + "*" + y.name(j));
    }
  F2Matrix d(n * m, n * m), iota(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t col = i * m + j;
      for (std::size_t i2 : x.differential().column(i).support())
        d.flip(i2 * m + j, col);
      for (std::size_t j2 : y.differential().column(j).support())
        d.flip(i * m + j2, col);
      for (std::size_t i2 : x.iota().column(i).support())
        for (std::size_t j2 : y.iota().column(j).support())
          iota.flip(i2 * m + j2, col);
    }
  return UComplex(x.shift() + y.shift(), deg, d, iota, names);
}

UComplex dual(const UComplex &x) {
  std::vector<long long> deg;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < x.size(); ++i) {
    deg.push_back(-x.deg(i));
    names.push_back(x.name(i) + "'");
  }
  return UComplex(-x.shift(), deg, x.differential().transpose(), x.iota().transpose(), names);
}

UComplex iota_cone(const UComplex &x) {
  const std::size_t n = x.size();
  std::vector<long long> deg;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    deg.push_back(x.deg(i));
    names.push_back(x.name(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    deg.push_back(x.deg(i) - 1);
    names.push_back("Q" + x.name(i));
  }
  const F2Matrix phi = x.iota() + F2Matrix::identity(n);
  F2Matrix d(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (x.differential().get(i, j)) {
        d.set(i, j);
        d.set(n + i, n + j);
      }
      if (phi.get(i, j))
        d.set(n + i, j);
    }
  return UComplex(x.shift(), deg, d, F2Matrix::identity(2 * n), names);
}

GradedUModule homology(const UComplex &c) {
  GradedUModule out;
  if (c.size() == 0)
    return out;
  CycleData data(c);
  const Pieces &p = data.pieces();
  const long long lo = p.min_deg() - 2, hi = p.max_deg();
  // r(t, m) = rank of U^m : H_t -> H_{t-2m}.
  std::map<std::pair<long long, long long>, long long> memo;
  auto rank = [&](long long t, long long m) -> long long {
    if (t > hi)
      return 0;
    auto key = std::make_pair(t, m);
    auto it = memo.find(key);
    if (it != memo.end())
      return it->second;
    F2Subspace s = data.boundaries(t - 2 * m);
    const std::size_t base = s.dim();
    for (const auto &z : data.cycles(t).basis())
      s.insert(p.times_u(z, t, m));
    return memo[key] = static_cast<long long>(s.dim() - base);
  };
  // Summands with top t and length >= m + 1.
  auto at_least = [&](long long t, long long m) { return rank(t, m) - rank(t + 2, m + 1); };
  for (long long t = lo; t <= hi; ++t) {
    const long long deep = std::max<long long>(0, (t - p.min_deg() + 2) / 2);
    const Rational g = c.shift() + t;
    for (long long k = at_least(t, deep); k > 0; --k)
      out.towers.push_back(g);
    for (long long len = 1; len <= deep; ++len)
      for (long long k = at_least(t, len - 1) - at_least(t, len); k > 0; --k)
        out.torsion.push_back({g, static_cast<int>(len)});
  }
  return out.canonicalize();
}

GradedUModule branched_homology(const UComplex &c) { return homology(iota_cone(c)); }

KerCokerDims ker_coker_dims(const UComplex &c, const Rational &lo, const Rational &hi) {
  KerCokerDims out;
  out.lo = lo;
  const Rational a = lo - c.shift(), b = hi - c.shift();
  if (denominator(a) != 1 || denominator(b) != 1)
    throw InvalidInputError("grading window is not in the complex's grading class");
  const long long t0 = static_cast<long long>(numerator(a)), t1 = static_cast<long long>(numerator(b));
  CycleData data(c);
  const UComplex cone = iota_cone(c);
  CycleData cdata(cone);
  const F2Matrix phi = c.iota() + F2Matrix::identity(c.size());
  for (long long t = t0; t <= t1; ++t) {
    const F2Matrix phit = data.pieces().restrict(phi, data.pieces(), t, 0);
    F2Subspace img = data.boundaries(t);
    const std::size_t bdim = img.dim();
    for (const auto &z : data.cycles(t).basis())
      img.insert(phit.apply(z));
    const long long h = static_cast<long long>(data.homology_dim(t));
    const long long r = static_cast<long long>(img.dim() - bdim);
    out.ker.push_back(h - r);
    out.coker.push_back(h - r);
    out.cone.push_back(static_cast<long long>(cdata.homology_dim(t)));
  }
  return out;
}

Rational tower_degree(const UComplex &c) {
  const GradedUModule h = homology(c);
  if (h.towers.size() != 1)
    throw InternalError("homology does not have exactly one tower");
  return h.towers.front();
}

DeltaPair delta_invariants(const UComplex &c) {
  const Rational d = tower_degree(c);
  const GradedUModule hb = branched_homology(c);
  if (hb.towers.size() != 2)
    throw InternalError("branched homology does not have two towers");
  DeltaPair out;
  bool have_lower = false;
  for (const auto &t : hb.towers) {
    if (denominator(t - d) == 1 && numerator(t - d) % 2 == 0) {
      out.lower = t;
      have_lower = true;
    } else {
      out.upper = t + 1;
    }
  }
  if (!have_lower)
    throw InternalError("branched towers have the wrong parities");
  return out;
}

} // namespace hfb
