#include "hfb/f2.hpp"

#include <bit>
#include <stdexcept>

namespace hfb {

bool F2Vector::is_zero() const {
  for (auto w : words_)
    if (w)
      return false;
  return true;
}

std::size_t F2Vector::lowest() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w])
      return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  return size_;
}

std::size_t F2Vector::popcount() const {
  std::size_t n = 0;
  for (auto w : words_)
    n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> F2Vector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, i);
  return m;
}

F2Vector F2Matrix::column(std::size_t c) const {
  F2Vector v(rows());
  for (std::size_t r = 0; r < rows(); ++r)
    if (get(r, c))
      v.set(r);
  return v;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (auto c : rows_[r].support())
      t.set(c, r);
  return t;
}

F2Vector F2Matrix::apply(const F2Vector &x) const {
  if (x.size() != cols_)
    throw std::invalid_argument("F2Matrix::apply: size mismatch");
  F2Vector y(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    std::uint64_t acc = 0;
    const auto &a = rows_[r].words();
    const auto &b = x.words();
    for (std::size_t w = 0; w < a.size(); ++w)
      acc ^= a[w] & b[w];
    if (std::popcount(acc) & 1)
      y.set(r);
  }
  return y;
}

F2Matrix &F2Matrix::operator+=(const F2Matrix &o) {
  if (o.rows() != rows() || o.cols_ != cols_)
    throw std::invalid_argument("F2Matrix::+: shape mismatch");
  for (std::size_t r = 0; r < rows(); ++r)
    rows_[r] ^= o.rows_[r];
  return *this;
}

F2Matrix operator*(const F2Matrix &a, const F2Matrix &b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("F2Matrix::*: shape mismatch");
  F2Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (auto k : a.row(r).support())
      out.row(r) ^= b.row(k);
  return out;
}

bool F2Matrix::is_zero() const {
  for (const auto &r : rows_)
    if (!r.is_zero())
      return false;
  return true;
}

std::size_t F2Matrix::rank() const {
  F2Subspace s(cols_);
  for (const auto &r : rows_)
    s.insert(r);
  return s.dim();
}

F2Vector F2Subspace::reduce(F2Vector v) const {
  // Basis vectors carry no bits at other pivots, so one pass over the
  // original support clears every pivot bit.
  for (auto i : v.support())
    if (pivot_of_[i] >= 0)
      v ^= basis_[static_cast<std::size_t>(pivot_of_[i])];
  return v;
}

bool F2Subspace::insert(const F2Vector &v) {
  if (v.size() != ambient_)
    throw std::invalid_argument("F2Subspace::insert: size mismatch");
  F2Vector r = reduce(v);
  if (r.is_zero())
    return false;
  const std::size_t p = r.lowest();
  // keep the basis fully reduced at pivot columns
  for (auto &b : basis_)
    if (b.get(p))
      b ^= r;
  pivot_of_[p] = static_cast<int>(basis_.size());
  basis_.push_back(std::move(r));
  return true;
}

void F2Subspace::insert_all(const F2Subspace &o) {
  for (const auto &b : o.basis_)
    insert(b);
}

bool F2Subspace::contains_all(const F2Subspace &o) const {
  for (const auto &b : o.basis_)
    if (!contains(b))
      return false;
  return true;
}

std::vector<F2Vector> nullspace(const F2Matrix &a) {
  F2LinearSystem sys(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    sys.add(a.row(r), false);
  return sys.solution_space_basis();
}

std::optional<F2Vector> solve(const F2Matrix &a, const F2Vector &b) {
  if (b.size() != a.rows())
    throw std::invalid_argument("solve: size mismatch");
  F2LinearSystem sys(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!sys.add(a.row(r), b.get(r)))
      return std::nullopt;
  return sys.any_solution();
}

bool F2LinearSystem::add(const F2Vector &coeffs, bool rhs) {
  if (coeffs.size() != unknowns_)
    throw std::invalid_argument("F2LinearSystem::add: size mismatch");
  F2Vector e(unknowns_ + 1);
  for (auto i : coeffs.support())
    e.set(i);
  if (rhs)
    e.set(unknowns_);
  F2Vector r = eqs_.reduce(e);
  if (r.is_zero())
    return consistent_;
  if (r.lowest() == unknowns_)
    consistent_ = false;
  eqs_.insert(r);
  return consistent_;
}

std::optional<F2Vector> F2LinearSystem::any_solution() const {
  if (!consistent_)
    return std::nullopt;
  // Basis is reduced at pivots: set free variables to zero, pivot variable = rhs.
  F2Vector x(unknowns_);
  for (const auto &b : eqs_.basis()) {
    const std::size_t p = b.lowest();
    if (b.get(unknowns_))
      x.set(p);
  }
  return x;
}

std::vector<F2Vector> F2LinearSystem::solution_space_basis() const {
  std::vector<bool> is_pivot(unknowns_, false);
  for (const auto &b : eqs_.basis()) {
    const std::size_t p = b.lowest();
    if (p < unknowns_)
      is_pivot[p] = true;
  }
  std::vector<F2Vector> out;
  for (std::size_t f = 0; f < unknowns_; ++f) {
    if (is_pivot[f])
      continue;
    F2Vector x(unknowns_);
    x.set(f);
    for (const auto &b : eqs_.basis()) {
      const std::size_t p = b.lowest();
      if (p < unknowns_ && b.get(f))
        x.set(p);
    }
    out.push_back(std::move(x));
  }
  return out;
}

} // namespace hfb
