#include <doctest.h>

#include "hfb/errors.hpp"
#include "hfb/graded_root.hpp"
#include "hfb/iota_complex.hpp"
#include "hfb/local_equivalence.hpp"
#include "oracles.hpp"

#include <random>

using namespace hfb;

namespace {

PlumbingTree gamma_q(long q) { return PlumbingTree::star(-1, {{-2}, {-3}, {-q}}); }

F2Matrix matrix(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>> &entries) {
  F2Matrix m(n, n);
  for (const auto &[i, j] : entries)
    m.set(i, j);
  return m;
}

// C[r]: a, b in degree r, c in degree r - 1, dc = Ua + Ub, iota swaps a and b.
UComplex c_r(long long r) {
  return UComplex(r, {0, 0, -1}, matrix(3, {{0, 2}, {1, 2}}), matrix(3, {{1, 0}, {0, 1}, {2, 2}}), {"a", "b", "c"});
}

UComplex point(const Rational &d) { return UComplex(d, {0}, F2Matrix(1, 1), F2Matrix::identity(1), {"x"}); }

UComplex gamma_complex(long q) {
  const auto t = gamma_q(q);
  const auto k = canonical_char(t);
  return model_complex(lattice_involution(t, k, build_root_star(t, k)));
}

// Graded dimensions and summand tops of a module in grading shift + t.
std::size_t module_dim(const GradedUModule &m, const Rational &g) {
  std::size_t n = 0;
  auto covers = [&](const Rational &top, long long len) {
    const Rational diff = top - g;
    if (denominator(diff) != 1 || diff < 0 || numerator(diff) % 2 != 0)
      return false;
    return len < 0 || numerator(diff) / 2 < len;
  };
  for (const auto &t : m.towers)
    n += covers(t, -1);
  for (const auto &s : m.torsion)
    n += covers(s.degree, s.length);
  return n;
}

std::size_t module_tops(const GradedUModule &m, const Rational &g) {
  std::size_t n = 0;
  for (const auto &t : m.towers)
    n += t == g;
  for (const auto &s : m.torsion)
    n += s.degree == g;
  return n;
}

void check_against_oracle(const UComplex &c) {
  oracle::FreeComplex fc;
  fc.deg = c.degrees();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c.differential().get(i, j))
        fc.d.emplace_back(i, j);
  const GradedUModule h = homology(c);
  long long lo = 0, hi = 0;
  for (long long d : c.degrees()) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  for (long long t = lo - 6; t <= hi + 1; ++t) {
    const Rational g = c.shift() + t;
    CHECK_MESSAGE(module_dim(h, g) == fc.dim_h(t), "grading " << t);
    CHECK_MESSAGE(module_tops(h, g) == fc.tops(t), "grading " << t);
  }
}

// Abstract root from (level, successor) lists; weights measured from base.
GradedRoot abstract_root(Rational base, std::vector<int> level, std::vector<int> succ) {
  std::vector<LatticePoint> rep;
  for (std::size_t i = 0; i < level.size(); ++i)
    rep.push_back({static_cast<long long>(i)});
  return GradedRoot::from_parts(std::move(base), std::move(level), std::move(succ), rep, {}, RootEngine::Abstract,
                                true);
}

} // namespace

TEST_CASE("complex validation") {
  CHECK_NOTHROW(c_r(0));
  // d^2 != 0: x -> y -> z with both arrows of degree -1.
  CHECK_THROWS_AS(UComplex(0, {0, -1, -2}, matrix(3, {{1, 0}, {2, 1}}), F2Matrix::identity(3)), InternalError);
  // iota sending the degree-0 generator up to degree 2 would need U^-1.
  CHECK_THROWS_AS(UComplex(0, {0, 2}, F2Matrix(2, 2), matrix(2, {{0, 0}, {0, 1}, {1, 1}})), InternalError);
  // iota not a chain map.
  CHECK_THROWS_AS(UComplex(0, {0, 0, -1}, matrix(3, {{0, 2}}), matrix(3, {{1, 0}, {0, 1}, {2, 2}})), InternalError);
  CHECK(c_r(0).iota_is_homotopy_involution());
}

TEST_CASE("homology of small complexes") {
  const auto p = homology(point(0));
  CHECK(p.towers == std::vector<Rational>{0});
  CHECK(p.torsion.empty());

  const auto h = homology(c_r(-2));
  CHECK(h.towers == std::vector<Rational>{-2});
  REQUIRE(h.torsion.size() == 1);
  CHECK(h.torsion[0] == TorsionSummand{-2, 1});
  CHECK(h.to_string() == "F[U]_(-2) + F_(-2)");

  // x at 0, y at -3 with dy = U^2 x: only F[U]/U^2 survives.
  const UComplex len2(0, {0, -3}, matrix(2, {{0, 1}}), F2Matrix::identity(2));
  const auto h2 = homology(len2);
  CHECK(h2.towers.empty());
  REQUIRE(h2.torsion.size() == 1);
  CHECK(h2.torsion[0] == TorsionSummand{0, 2});
  check_against_oracle(len2);
  check_against_oracle(c_r(0));
}

TEST_CASE("model complex of Gamma_7 is C[0]") {
  const UComplex c = gamma_complex(7);
  REQUIRE(c.size() == 3);
  CHECK(c.shift() == 0);
  // Two leaves in degree 0, one angle in degree -1 with d = U a + U b.
  CHECK(c.deg(0) == 0);
  CHECK(c.deg(1) == 0);
  CHECK(c.deg(2) == -1);
  CHECK(c.differential().get(0, 2));
  CHECK(c.differential().get(1, 2));
  // iota swaps the leaves and fixes the angle.
  CHECK(c.iota().get(1, 0));
  CHECK(c.iota().get(0, 1));
  CHECK(c.iota().get(2, 2));
  CHECK(c.iota().column(2).popcount() == 1);
  CHECK(homology(c) == homology(c_r(0)));
}

TEST_CASE("model complex exponents follow the weights") {
  // Leaves v (weight 0) and w (weight -4) merging at weight -6, then a stem.
  const auto r = abstract_root(0, {0, 1, 2, 2, 3, 4, 5, 6}, {1, 2, 4, 4, 5, 6, 7, -1});
  const UComplex c = model_complex(r);
  REQUIRE(c.size() == 3);
  CHECK(c.deg(2) == -5);
  // d(angle) = U^3 v + U w: exponents (deg_i - deg_angle + 1) / 2.
  CHECK(c.deg(0) == 0);
  CHECK(c.deg(1) == -4);
  CHECK((c.deg(0) - c.deg(2) + 1) / 2 == 3);
  CHECK((c.deg(1) - c.deg(2) + 1) / 2 == 1);
  const auto h = homology(c);
  CHECK(h.towers == std::vector<Rational>{0});
  REQUIRE(h.torsion.size() == 1);
  CHECK(h.torsion[0] == TorsionSummand{-4, 1});
  check_against_oracle(c);
}

TEST_CASE("model complex homology matches roots") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> wt(2, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<long>> legs;
    for (int l = 0; l < 3; ++l)
      legs.push_back({-wt(rng)});
    const auto t = PlumbingTree::star(-1 - (trial % 2), legs);
    if (!is_negative_definite(intersection_form(t)))
      continue;
    const auto k = spin_char(t);
    const auto r = lattice_involution(t, k, build_root_star(t, k));
    const UComplex c = model_complex(r);
    CHECK(tower_degree(c) == d_invariant(r));
    CHECK(c.iota_is_homotopy_involution());
    check_against_oracle(c);
  }
}

TEST_CASE("tensor, dual and shifts") {
  const UComplex c = c_r(0);
  CHECK(homology(tensor(c, point(0))) == homology(c));
  CHECK(homology(tensor(c, point(3))) == homology(c).shifted(3));
  const UComplex cc = tensor(c, c);
  CHECK(cc.size() == 9);
  CHECK(tower_degree(cc) == 2 * tower_degree(c));
  check_against_oracle(cc);
  // Dual of C[0]: tower at 0 and F in degree 1.
  const auto hd = homology(dual(c));
  CHECK(hd.towers == std::vector<Rational>{0});
  REQUIRE(hd.torsion.size() == 1);
  CHECK(hd.torsion[0] == TorsionSummand{1, 1});
  CHECK(homology(dual(dual(c))) == homology(c));
  check_against_oracle(dual(c));
  CHECK(tower_degree(dual(point(Rational(1, 2)))) == Rational(-1, 2));
}

TEST_CASE("branched homology and deltas") {
  // iota = id on one generator: towers at 0 and -1, both deltas 0.
  const auto hp = branched_homology(point(0));
  CHECK(hp.towers == std::vector<Rational>{0, -1});
  const auto dp = delta_invariants(point(0));
  CHECK(dp.upper == 0);
  CHECK(dp.lower == 0);

  // Trivial iota on C[-2] (the T(3,7) complex): two shifted copies.
  const UComplex trivial = c_r(-2).with_iota(F2Matrix::identity(3));
  const auto ht = branched_homology(trivial);
  CHECK(ht.to_string() == "F[U]_(-2) + F[U]_(-3) + F_(-3) + F_(-2)");
  CHECK(delta_invariants(trivial).upper == -2);
  CHECK(delta_invariants(trivial).lower == -2);

  // C[-2] with the swap (P(2,-3,-7)): delta_bar = -2, delta_under = -4.
  const auto dc = delta_invariants(c_r(-2));
  CHECK(dc.upper == -2);
  CHECK(dc.lower == -4);
  CHECK(branched_homology(c_r(-2)).towers.size() == 2);

  // Graded dimensions of the cone equal ker_g + coker_{g+1}.
  for (const UComplex &x : {c_r(0), trivial, tensor(c_r(0), c_r(0)), gamma_complex(11)}) {
    const auto kc = ker_coker_dims(x, x.shift() - 8, x.shift() + 3);
    for (std::size_t i = 0; i + 1 < kc.cone.size(); ++i)
      CHECK(kc.cone[i] == kc.ker[i] + kc.coker[i + 1]);
  }
}

TEST_CASE("local maps") {
  const UComplex c = c_r(0);
  CHECK(is_local_map(F2Matrix::identity(3), c, c));
  // a -> a, b -> a, c -> 0 is a chain map but does not commute with iota up
  // to homotopy: the only degree +1 homotopies vanish on a and b.
  const F2Matrix collapse = matrix(3, {{0, 0}, {0, 1}});
  CHECK(!is_local_map(collapse, c, c));
  // Killing the tower is rejected.
  CHECK(!is_local_map(F2Matrix(3, 3), c, c));
  // Every self-local equivalence of C[0] is injective.
  const auto maps = self_local_equivalences(c);
  CHECK(!maps.empty());
  for (const auto &f : maps) {
    CHECK(is_local_map(f, c, c));
    CHECK(kernel_rank(f, c) == 0);
  }
  // C[0] and a point are not locally equivalent; C[0] with trivial iota is.
  CHECK(!locally_equivalent(c, point(0)));
  CHECK(locally_equivalent(c.with_iota(F2Matrix::identity(3)), point(0)));
  // C[0] maps locally to a point (a, b -> x) but not the other way round.
  CHECK(find_local_map(c, point(0)).has_value());
  CHECK(!find_local_map(point(0), c).has_value());
}

TEST_CASE("connected homology") {
  // Trivial iota: only the tower survives.
  const UComplex trivial = c_r(-2).with_iota(F2Matrix::identity(3));
  const auto ht = homology(connected_complex(trivial));
  CHECK(ht.to_string() == "F[U]_(-2)");
  CHECK(connected_homology_bruteforce(trivial) == ht);
  // C[-2] with the swap is its own connected complex.
  const auto hc = homology(connected_complex(c_r(-2)));
  CHECK(hc.to_string() == "F[U]_(-2) + F_(-2)");
  CHECK(connected_homology_bruteforce(c_r(-2)) == hc);
  // The tensor square keeps a non-trivial reduced part.
  const UComplex cc = tensor(c_r(0), c_r(0));
  const UComplex conn = connected_complex(cc);
  CHECK(locally_equivalent(conn, cc));
  CHECK(homology(conn).omega() >= 1);
  CHECK_THROWS_AS(self_local_equivalences(cc), RankBoundError);
  SearchLimits wide;
  wide.rank_bound = 9;
  wide.max_free_dim = 20;
  CHECK(connected_homology_bruteforce(cc, wide) == homology(conn));
}
