#include <doctest.h>

#include "hfb/f2.hpp"

#include <random>

using namespace hfb;

namespace {

F2Matrix random_matrix(std::mt19937 &rng, std::size_t r, std::size_t c) {
  F2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() & 1)
        m.set(i, j);
  return m;
}

// Gaussian elimination on a plain bool table, independent of the packed code.
std::size_t naive_rank(std::vector<std::vector<int>> a) {
  std::size_t rank = 0, rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && !a[p][c])
      ++p;
    if (p == rows)
      continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && a[r][c])
        for (std::size_t k = 0; k < cols; ++k)
          a[r][k] ^= a[rank][k];
    ++rank;
  }
  return rank;
}

std::vector<std::vector<int>> table(const F2Matrix &m) {
  std::vector<std::vector<int>> t(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      t[i][j] = m.get(i, j);
  return t;
}

} // namespace

TEST_CASE("f2 vector bit operations across word boundaries") {
  F2Vector v(130);
  CHECK(v.is_zero());
  CHECK(v.lowest() == 130);
  v.set(129);
  v.set(64);
  v.flip(3);
  CHECK(v.lowest() == 3);
  CHECK(v.popcount() == 3);
  CHECK(v.support() == std::vector<std::size_t>{3, 64, 129});
  v.set(3, false);
  CHECK(v.lowest() == 64);
}

TEST_CASE("f2 rank and product agree with naive elimination") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 20, c = 1 + rng() % 90, k = 1 + rng() % 15;
    auto a = random_matrix(rng, r, c);
    CHECK(a.rank() == naive_rank(table(a)));
    auto b = random_matrix(rng, c, k);
    auto ab = a * b;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        int s = 0;
        for (std::size_t t = 0; t < c; ++t)
          s ^= a.get(i, t) & b.get(t, j);
        CHECK(ab.get(i, j) == static_cast<bool>(s));
      }
    CHECK(a.transpose().transpose() == a);
    CHECK((a + a).is_zero());
  }
}

TEST_CASE("f2 nullspace and solve") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 15, c = 1 + rng() % 70;
    auto a = random_matrix(rng, r, c);
    auto ns = nullspace(a);
    CHECK(ns.size() + a.rank() == c);
    F2Subspace span(c);
    for (auto &x : ns) {
      CHECK(a.apply(x).is_zero());
      CHECK(span.insert(x));
    }
    F2Vector x(c);
    for (std::size_t i = 0; i < c; ++i)
      if (rng() & 1)
        x.set(i);
    auto b = a.apply(x);
    auto y = solve(a, b);
    REQUIRE(y.has_value());
    CHECK(a.apply(*y) == b);
  }
  F2Matrix z(2, 2);
  z.set(0, 0);
  z.set(1, 0);
  F2Vector b(2);
  b.set(0);
  CHECK_FALSE(solve(z, b).has_value());
}

TEST_CASE("f2 subspace membership") {
  F2Subspace s(5);
  F2Vector a(5), b(5), c(5);
  a.set(1);
  a.set(3);
  b.set(3);
  b.set(4);
  c.set(1);
  c.set(4);
  CHECK(s.insert(a));
  CHECK(s.insert(b));
  CHECK_FALSE(s.insert(c));
  CHECK(s.contains(c));
  CHECK(s.dim() == 2);
  F2Vector d(5);
  d.set(0);
  CHECK_FALSE(s.contains(d));
}
