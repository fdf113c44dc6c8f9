#include "hfb/exact_linalg.hpp"

#include <algorithm>

namespace hfb {

IntMatrix int_matrix(const std::vector<std::vector<long>> &rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.front().size());
  IntMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != c)
      throw std::invalid_argument("int_matrix: ragged rows");
    for (Eigen::Index j = 0; j < c; ++j)
      m(i, j) = rows[i][j];
  }
  return m;
}

IntVector int_vector(const std::vector<long> &entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = entries[i];
  return v;
}

bool is_symmetric(const IntMatrix &m) {
  if (m.rows() != m.cols())
    return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i))
        return false;
  return true;
}

bool is_negative_definite(const IntMatrix &m) {
  if (!is_symmetric(m))
    throw std::invalid_argument("is_negative_definite: matrix is not symmetric");
  const auto minors = leading_minors(m);
  if (static_cast<Eigen::Index>(minors.size()) != m.rows())
    return false;
  for (std::size_t k = 0; k < minors.size(); ++k) {
    // size k+1 minor must have sign (-1)^(k+1)
    const bool want_negative = (k % 2) == 0;
    if (want_negative ? minors[k] >= 0 : minors[k] <= 0)
      return false;
  }
  return true;
}

RationalVector solve_exact(const IntMatrix &m, const IntVector &b) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("solve_exact: matrix is not square");
  if (b.size() != m.rows())
    throw std::invalid_argument("solve_exact: dimension mismatch");
  const Eigen::Index n = m.rows();
  RationalMatrix a(n, n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = Rational(m(i, j));
    a(i, n) = Rational(b(i));
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && a(p, k) == 0)
      ++p;
    if (p == n)
      throw std::domain_error("solve_exact: singular matrix");
    if (p != k)
      a.row(k).swap(a.row(p));
    const Rational pivot = a(k, k);
    for (Eigen::Index j = k; j <= n; ++j)
      a(k, j) /= pivot;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0)
        continue;
      const Rational f = a(i, k);
      for (Eigen::Index j = k; j <= n; ++j)
        a(i, j) -= f * a(k, j);
    }
  }
  return a.col(n);
}

std::optional<IntVector> as_integral(const RationalVector &x) {
  IntVector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (denominator(x(i)) != 1)
      return std::nullopt;
    out(i) = numerator(x(i));
  }
  return out;
}

namespace {

BigInt floor_div(const BigInt &a, const BigInt &b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix &m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix left = IntMatrix::Identity(rows, rows);
  IntMatrix right = IntMatrix::Identity(cols, cols);
  const Eigen::Index steps = std::min(rows, cols);

  for (Eigen::Index t = 0; t < steps; ++t) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    for (;;) {
      Eigen::Index pr = -1, pc = -1;
      BigInt best = 0;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pr < 0 || abs(a(i, j)) < best)) {
            best = abs(a(i, j));
            pr = i;
            pc = j;
          }
      if (pr < 0)
        break; // remaining block is zero
      a.row(t).swap(a.row(pr));
      left.row(t).swap(left.row(pr));
      a.col(t).swap(a.col(pc));
      right.col(t).swap(right.col(pc));

      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        const BigInt q = floor_div(a(i, t), a(t, t));
        if (q != 0) {
          a.row(i) -= q * a.row(t);
          left.row(i) -= q * left.row(t);
        }
        if (a(i, t) != 0)
          clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        const BigInt q = floor_div(a(t, j), a(t, t));
        if (q != 0) {
          a.col(j) -= q * a.col(t);
          right.col(j) -= q * right.col(t);
        }
        if (a(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // Divisibility: pull in any entry not divisible by the pivot.
      bool divisible = true;
      for (Eigen::Index i = t + 1; i < rows && divisible; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.row(t) += a.row(i);
            left.row(t) += left.row(i);
            divisible = false;
            break;
          }
      if (divisible)
        break;
    }
    if (a(t, t) < 0) {
      a.row(t) *= BigInt(-1);
      left.row(t) *= BigInt(-1);
    }
  }

  SmithForm out;
  out.diagonal.resize(steps);
  for (Eigen::Index i = 0; i < steps; ++i)
    out.diagonal(i) = a(i, i);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

int signature(const IntMatrix &m) {
  if (!is_symmetric(m))
    throw std::invalid_argument("signature: matrix is not symmetric");
  const Eigen::Index n = m.rows();
  RationalMatrix a = m.cast<Rational>();
  int sig = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && a(p, p) == 0)
        ++p;
      if (p < n) {
        a.row(k).swap(a.row(p));
        a.col(k).swap(a.col(p));
      } else {
        Eigen::Index q = k + 1;
        while (q < n && a(k, q) == 0)
          ++q;
        if (q == n)
          throw std::domain_error("signature: singular matrix");
        // congruence e_k -> e_k + e_q makes the pivot 2 a_kq != 0
        a.row(k) += a.row(q);
        a.col(k) += a.col(q);
      }
    }
    const Rational pivot = a(k, k);
    sig += pivot > 0 ? 1 : -1;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (a(i, k) == 0)
        continue;
      const Rational f = a(i, k) / pivot;
      a.row(i) -= f * a.row(k);
      a.col(i) -= f * a.col(k);
    }
  }
  return sig;
}

std::string to_string(const BigInt &x) { return x.str(); }

std::string to_string(const Rational &x) {
  if (denominator(x) == 1)
    return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

} // namespace hfb
