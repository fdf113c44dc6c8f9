#include "pieces.hpp"

#include "hfb/errors.hpp"

#include <algorithm>

namespace hfb::detail {

namespace {
bool same_parity(long long a, long long b) { return ((a - b) % 2 + 2) % 2 == 0; }
} // namespace

Pieces::Pieces(const std::vector<long long> &deg) : deg_(deg) {
  if (!deg_.empty()) {
    min_ = *std::min_element(deg_.begin(), deg_.end());
    max_ = *std::max_element(deg_.begin(), deg_.end());
  }
}

const Pieces::Piece &Pieces::piece(long long t) const {
  auto it = cache_.find(t);
  if (it != cache_.end())
    return it->second;
  Piece p;
  p.pos.assign(deg_.size(), -1);
  for (std::size_t i = 0; i < deg_.size(); ++i)
    if (deg_[i] >= t && same_parity(deg_[i], t)) {
      p.pos[i] = static_cast<int>(p.gens.size());
      p.gens.push_back(i);
    }
  return cache_.emplace(t, std::move(p)).first->second;
}

const std::vector<std::size_t> &Pieces::gens(long long t) const { return piece(t).gens; }
int Pieces::pos(long long t, std::size_t i) const { return piece(t).pos[i]; }

F2Matrix Pieces::restrict(const F2Matrix &m, const Pieces &target, long long t, long long s) const {
  const auto &cols = gens(t);
  F2Matrix out(target.dim(t - s), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m.get(r, cols[c])) {
        const int p = target.pos(t - s, r);
        if (p < 0)
          throw InternalError("map entry is not homogeneous");
        out.flip(static_cast<std::size_t>(p), c);
      }
  return out;
}

F2Vector Pieces::times_u(const F2Vector &x, long long t, long long m) const {
  F2Vector out(dim(t - 2 * m));
  for (std::size_t p : x.support())
    out.set(static_cast<std::size_t>(pos(t - 2 * m, gens(t)[p])));
  return out;
}

CycleData::CycleData(const UComplex &c) : c_(c), p_(c.degrees()) {}

const F2Subspace &CycleData::cycles(long long t) const {
  auto it = z_.find(t);
  if (it != z_.end())
    return it->second;
  F2Subspace z(p_.dim(t));
  for (const auto &v : nullspace(p_.restrict(c_.differential(), p_, t, 1)))
    z.insert(v);
  return z_.emplace(t, std::move(z)).first->second;
}

const F2Subspace &CycleData::boundaries(long long t) const {
  auto it = b_.find(t);
  if (it != b_.end())
    return it->second;
  F2Subspace b(p_.dim(t));
  const F2Matrix d = p_.restrict(c_.differential(), p_, t + 1, 1);
  for (std::size_t c = 0; c < d.cols(); ++c)
    b.insert(d.column(c));
  return b_.emplace(t, std::move(b)).first->second;
}

long long CycleData::deep_tower_grading() const {
  const long long a = p_.min_deg() - 1, b = p_.min_deg() - 2;
  const std::size_t ha = homology_dim(a), hb = homology_dim(b);
  if (ha + hb != 1)
    throw InternalError("localised homology is not a single tower");
  return ha == 1 ? a : b;
}

MapVars::MapVars(const std::vector<long long> &ydeg, const std::vector<long long> &xdeg, long long s,
                 std::size_t off)
    : offset(off), rows(ydeg.size()), cols(xdeg.size()) {
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (allowed_entry(ydeg[i], xdeg[j], s))
        entries.emplace_back(i, j);
}

F2Matrix MapVars::value(const F2Vector &sol) const {
  F2Matrix m(rows, cols);
  for (std::size_t u = 0; u < entries.size(); ++u)
    if (sol.get(offset + u))
      m.set(entries[u].first, entries[u].second);
  return m;
}

MatrixEquations::MatrixEquations(std::size_t rows, std::size_t cols, std::size_t unknowns)
    : rows_(rows), cols_(cols), coeff_(rows * cols, F2Vector(unknowns)), rhs_(rows, cols) {}

void MatrixEquations::add_left(const F2Matrix &a, const MapVars &v) {
  for (std::size_t u = 0; u < v.count(); ++u) {
    const auto [k, j] = v.entries[u];
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a.get(i, k))
        coeff_[i * cols_ + j].flip(v.offset + u);
  }
}

void MatrixEquations::add_right(const MapVars &v, const F2Matrix &b) {
  for (std::size_t u = 0; u < v.count(); ++u) {
    const auto [i, k] = v.entries[u];
    for (std::size_t j : b.row(k).support())
      coeff_[i * cols_ + j].flip(v.offset + u);
  }
}

void MatrixEquations::add_constant(const F2Matrix &r) { rhs_ += r; }

bool MatrixEquations::feed(F2LinearSystem &sys) const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const F2Vector &c = coeff_[i * cols_ + j];
      const bool r = rhs_.get(i, j);
      if (c.is_zero() && !r)
        continue;
      if (!sys.add(c, r))
        return false;
    }
  return true;
}

bool null_homotopic(const F2Matrix &m, const UComplex &x, const UComplex &y) {
  MapVars h(y.degrees(), x.degrees(), 1, 0);
  MatrixEquations eq(y.size(), x.size(), h.count());
  eq.add_left(y.differential(), h);
  eq.add_right(h, x.differential());
  eq.add_constant(m);
  F2LinearSystem sys(h.count());
  return eq.feed(sys);
}

std::optional<UComplex> rebase(const UComplex &y, const Rational &shift) {
  const Rational diff = y.shift() - shift;
  if (denominator(diff) != 1)
    return std::nullopt;
  const long long o = static_cast<long long>(numerator(diff));
  std::vector<long long> deg = y.degrees();
  for (auto &d : deg)
    d += o;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < y.size(); ++i)
    names.push_back(y.name(i));
  return UComplex(shift, deg, y.differential(), y.iota(), names);
}

} // namespace hfb::detail
