#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Boost 1.74 probes any type with a const_iterator typedef as a potential byte
// container; Eigen 3.4 expressions expose one with a void iterator, which breaks
// that probe. Byte-container import is never used here.
namespace boost::multiprecision::detail {
template <class C> struct is_byte_container_imp<C, true> : boost::false_type {};
} // namespace boost::multiprecision::detail

namespace hfb {

// Expression templates are disabled so the scalars behave like plain values
// inside Eigen expressions.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

} // namespace hfb

namespace Eigen {

template <> struct NumTraits<hfb::BigInt> : GenericNumTraits<hfb::BigInt> {
  using Real = hfb::BigInt;
  using NonInteger = hfb::Rational;
  using Nested = hfb::BigInt;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
  static inline hfb::BigInt epsilon() { return 0; }
  static inline hfb::BigInt dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <> struct NumTraits<hfb::Rational> : GenericNumTraits<hfb::Rational> {
  using Real = hfb::Rational;
  using NonInteger = hfb::Rational;
  using Nested = hfb::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 32
  };
  static inline hfb::Rational epsilon() { return 0; }
  static inline hfb::Rational dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace hfb {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = DenseMatrix<BigInt>;
using IntVector = DenseVector<BigInt>;
using RationalMatrix = DenseMatrix<Rational>;
using RationalVector = DenseVector<Rational>;

/// Build an IntMatrix from nested initializer rows; convenient in tests.
IntMatrix int_matrix(const std::vector<std::vector<long>> &rows);
IntVector int_vector(const std::vector<long> &entries);

bool is_symmetric(const IntMatrix &m);

/// Leading principal minors via fraction-free (Bareiss) elimination without
/// pivoting. Entry i is the determinant of the top-left (i+1)x(i+1) block; the
/// sequence stops at the first vanishing minor.
template <typename Derived>
std::vector<typename Derived::Scalar> leading_minors(const Eigen::MatrixBase<Derived> &m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols())
    throw std::invalid_argument("leading_minors: matrix is not square");
  DenseMatrix<Scalar> a = m;
  const Eigen::Index n = a.rows();
  std::vector<Scalar> minors;
  Scalar prev = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    minors.push_back(a(k, k));
    if (a(k, k) == 0)
      break;
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return minors;
}

/// Exact determinant by Bareiss elimination with row pivoting.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived> &m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols())
    throw std::invalid_argument("determinant: matrix is not square");
  const Eigen::Index n = m.rows();
  if (n == 0)
    return Scalar(1);
  DenseMatrix<Scalar> a = m;
  Scalar prev = 1;
  bool negate = false;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && a(p, k) == 0)
        ++p;
      if (p == n)
        return Scalar(0);
      a.row(k).swap(a.row(p));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return negate ? Scalar(-a(n - 1, n - 1)) : a(n - 1, n - 1);
}

/// True iff the leading principal minors alternate in sign starting negative.
bool is_negative_definite(const IntMatrix &m);

/// Exact solution of m x = b over the rationals.
RationalVector solve_exact(const IntMatrix &m, const IntVector &b);

/// Returns the integer vector when every entry of x is integral.
std::optional<IntVector> as_integral(const RationalVector &x);

struct SmithForm {
  IntVector diagonal; // nonnegative, d_i | d_{i+1}; length min(rows, cols)
  IntMatrix left;     // unimodular, rows x rows
  IntMatrix right;    // unimodular, cols x cols
};

/// D = left * m * right with D diagonal carrying the divisibility chain.
SmithForm smith_normal_form(const IntMatrix &m);

/// Signature (n_+ - n_-) of a nonsingular symmetric integer matrix, by exact
/// symmetric elimination over the rationals.
int signature(const IntMatrix &m);

std::string to_string(const BigInt &x);
std::string to_string(const Rational &x);

} // namespace hfb
