#include <doctest.h>

#include "hfb/errors.hpp"
#include "hfb/goeritz.hpp"
#include "hfb/knots.hpp"

#include <random>

using namespace hfb;

namespace {

KnotSpec spec(const char *text) { return parse_knot_spec(text); }

// |sum_i prod_{j != i} a_j|.
long long pretzel_det(const std::vector<long long> &a) {
  long long total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    long long prod = 1;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i)
        prod *= a[j];
    total += prod;
  }
  return std::llabs(total);
}

// |Delta(-1)| for Delta_{T(p,q)} = (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)),
// by exact polynomial long division.
long long torus_alexander_det(long long p, long long q) {
  using Poly = std::vector<long long>; // coefficient of t^i at index i
  auto mul = [](const Poly &a, const Poly &b) {
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        c[i + j] += a[i] * b[j];
    return c;
  };
  auto binom = [](long long n) {
    Poly c(static_cast<std::size_t>(n + 1), 0);
    c[0] = -1;
    c[static_cast<std::size_t>(n)] = 1;
    return c;
  };
  Poly num = mul(binom(p * q), binom(1)), den = mul(binom(p), binom(q));
  Poly quot(num.size() - den.size() + 1, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    const long long c = num[i + den.size() - 1] / den.back();
    quot[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j)
      num[i + j] -= c * den[j];
  }
  for (long long r : num)
    REQUIRE(r == 0);
  long long v = 0, sign = 1;
  for (long long c : quot) {
    v += sign * c;
    sign = -sign;
  }
  return std::llabs(v);
}

long long det_q(const Presentation &p) {
  return static_cast<long long>(abs(determinant(intersection_form(p.tree))));
}

std::vector<long> weights(const Presentation &p) { return p.tree.weights(); }

const std::vector<std::vector<long long>> kPretzels = {
    {2, -3, -7}, {2, -3, -9}, {2, -3, -11}, {-2, 3, 7}, {-2, 3, 5}, {1, 1, 1}, {3, -5, -7},
    {7, -3, 5},  {-3, 5, 7},  {2, 3, 5},    {-2, 5, 7}, {1, -3, -3}, {5, -3, -3, 2}};

} // namespace

TEST_CASE("pretzel and montesinos presentations") {
  const Presentation p = pretzel_plumbing({2, -3, -7});
  CHECK(weights(p) == std::vector<long>{-1, -2, -3, -7});
  CHECK_FALSE(p.mirrored);
  for (long q : {9L, 11L})
    CHECK(weights(pretzel_plumbing({2, -3, -q})) == std::vector<long>{-1, -2, -3, -q});
  CHECK(pretzel_plumbing({-2, 3, 7}).mirrored);

  const Presentation m = montesinos_plumbing(0, {{1, 2}, {-1, 3}, {-1, 7}});
  CHECK(weights(m) == weights(p));
  CHECK(canonical_form(presentation_root(m)) == canonical_form(presentation_root(p)));

  // r = -2/5: centre floor(r) - 1 = -2, leg 1/frac(r) = 5/3 = [2, 3].
  CHECK(weights(montesinos_plumbing(1, {{2, 5}})) == std::vector<long>{-2, -2, -3});
  CHECK_THROWS_AS(montesinos_plumbing(0, {{1, 2}, {-1, 2}}), DefinitenessError);

  for (const auto &a : kPretzels) {
    CAPTURE(a.size());
    CHECK(det_q(pretzel_plumbing(a)) == pretzel_det(a));
    CHECK(goeritz_oracle(a).determinant == pretzel_det(a));
  }
}

TEST_CASE("torus presentations") {
  // pq odd: Seifert star of Sigma(2,p,q).
  const Presentation e8 = torus_plumbing(3, 5);
  CHECK(weights(e8) == std::vector<long>{-2, -2, -2, -2, -2, -2, -2, -2});
  CHECK(e8.involution == Presentation::Involution::Trivial);
  CHECK(weights(torus_plumbing(3, 7)) == std::vector<long>{-1, -2, -3, -7});
  CHECK(torus_plumbing(-3, 7).mirrored);
  CHECK_FALSE(torus_plumbing(-3, -7).mirrored);

  // pq even: L_fix, then the swapped legs.
  const Presentation t45 = torus_plumbing(4, 5);
  CHECK(weights(t45) == std::vector<long>{-1, -2, -5, -5});
  CHECK(t45.tree.automorphism() == std::vector<int>{0, 1, 3, 2});
  CHECK(weights(torus_plumbing(2, 3)) == std::vector<long>{-1, -3, -3});
  CHECK(weights(torus_plumbing(3, 4)) == std::vector<long>{-2, -2, -2, -2, -2, -2});

  for (auto [p, q] : std::vector<std::pair<long long, long long>>{
           {2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}, {3, 7}, {4, 5}, {3, 8}, {5, 6}, {4, 7}}) {
    CAPTURE(p);
    CAPTURE(q);
    const long long det = torus_alexander_det(p, q);
    CHECK(det_q(torus_plumbing(p, q)) == det);
    KnotSpec k;
    k.params = {p, q};
    CHECK(knot_determinant(k) == det);
  }
}

TEST_CASE("spec validation rejects links and degenerate input") {
  CHECK_THROWS_AS(spec("pretzel(2,2)"), InvalidInputError);
  CHECK_THROWS_AS(spec("pretzel(3)"), InvalidInputError);
  CHECK_THROWS_AS(spec("pretzel(2,4,3)"), InvalidInputError);
  CHECK_THROWS_AS(spec("montesinos(0;2/5)"), InvalidInputError);
  CHECK_THROWS_AS(spec("montesinos(0;1/2,1/2)"), InvalidInputError);
  CHECK_THROWS_AS(spec("torus(2,4)"), InvalidInputError);
  CHECK_THROWS_AS(goeritz_oracle({2, 2}), InvalidInputError);
  CHECK_THROWS_AS(goeritz_oracle({3, 3, 3, 3, 3, 3, 3}), InvalidInputError);
  CHECK(knot_determinant(spec("sum(torus(2,3),pretzel(7,-3,5))")) == 3);
}

TEST_CASE("goeritz signatures") {
  // Positive trefoil and T(3,5) = P(-2,3,5) are positive diagrams here.
  CHECK(pretzel_diagram({-1, -1, -1}).writhe == 3);
  CHECK(goeritz_oracle({-1, -1, -1}).signature == -2);
  CHECK(pretzel_diagram({-2, 3, 5}).writhe == 10);
  CHECK(goeritz_oracle({-2, 3, 5}).signature == -8);
  CHECK(goeritz_oracle({2, -3, -7}).signature == 8);
  CHECK(goeritz_oracle({-2, 3, 7}).signature == -8);
  CHECK(pretzel_diagram({1, 1}).components == 2);
  // Mirror negates the signature.
  for (const auto &a : kPretzels) {
    std::vector<long long> m;
    for (long long x : a)
      m.push_back(-x);
    CHECK(goeritz_oracle(m).signature == -goeritz_oracle(a).signature);
  }
}

TEST_CASE("worked example invariants") {
  const InvariantPackage t = invariants(spec("torus(3,7)"));
  CHECK(InvariantPackage::hf_minus(t.delta) == -2);
  CHECK(InvariantPackage::hf_minus(t.hfb).to_string() == "F[U]_(-2) + F[U]_(-3) + F_(-3) + F_(-2)");
  CHECK(InvariantPackage::hf_minus(t.conn).to_string() == "F[U]_(-2)");
  CHECK(t.red_conn.to_string() == "0");
  CHECK(t.omega == 0);

  const InvariantPackage p = invariants(spec("pretzel(2,-3,-7)"));
  CHECK(p.delta_bar != p.delta_under);
  CHECK(InvariantPackage::hf_minus(p.conn).to_string() == "F[U]_(-2) + F_(-2)");
  CHECK(InvariantPackage::hf_minus(p.red_conn).to_string() == "F_(-2)");
  CHECK(p.hfb.towers.size() == 2);
  CHECK(p.hfb.torsion.size() == 1);
  CHECK(p.signature == 8);
  CHECK(p.det == 1);
}

TEST_CASE("pretzel identities against the Goeritz oracle") {
  KnotOptions opts;
  opts.verify = true;
  for (const auto &a : kPretzels) {
    KnotSpec k;
    k.kind = KnotSpec::Kind::Pretzel;
    k.params = a;
    CAPTURE(k.to_string());
    const InvariantPackage r = invariants(k, opts);
    REQUIRE(r.signature);
    const Rational quarter = Rational(-*r.signature) / 4;
    // The identity holds on the side whose cover bounds the plumbing.
    if (pretzel_plumbing(a).mirrored) {
      CHECK(r.delta_bar == quarter);
      CHECK(r.delta_under == r.delta);
    } else {
      CHECK(r.delta_under == quarter);
      CHECK(r.delta_bar == r.delta);
    }
  }
}

TEST_CASE("mirror, order and vanishing properties") {
  const std::vector<const char *> corpus = {"torus(3,7)",        "torus(2,7)",         "torus(3,4)",
                                            "pretzel(2,-3,-7)",  "pretzel(7,-3,5)",    "pretzel(-2,3,7)",
                                            "montesinos(1;2/5)", "montesinos(0;1/3,2/5,-1/2)"};
  for (const char *text : corpus) {
    CAPTURE(text);
    const KnotSpec k = spec(text);
    const InvariantPackage r = invariants(k);
    KnotSpec m;
    m.kind = KnotSpec::Kind::Mirror;
    m.children = {k};
    const InvariantPackage rm = invariants(m);
    CHECK(r.delta_under == -rm.delta_bar);
    CHECK(r.delta_bar == -rm.delta_under);
    CHECK(r.delta == -rm.delta);
    CHECK(r.delta_under <= r.delta);
    CHECK(r.delta <= r.delta_bar);
    CHECK(denominator((r.delta_bar - r.delta) / 2) == 1);
    CHECK(denominator((r.delta - r.delta_under) / 2) == 1);
    // reduced = 0 iff all three agree.
    CHECK((r.red_conn.to_string() == "0") == (r.delta_under == r.delta_bar && r.delta == r.delta_bar));
    CHECK(r.omega == r.red_conn.omega());
  }
  // Torus and 2-bridge (single fraction) knots, their mirrors and sums.
  for (const char *text : {"torus(2,5)", "torus(4,5)", "montesinos(0;3/7)", "mirror(torus(3,5))",
                           "sum(torus(3,7),mirror(torus(2,5)))", "sum(montesinos(0;5/3),torus(3,4))"}) {
    CAPTURE(text);
    CHECK(invariants(spec(text)).red_conn.to_string() == "0");
  }
}

TEST_CASE("connected sum inequalities on random pairs") {
  const std::vector<const char *> pool = {"torus(3,7)",       "torus(2,5)",        "pretzel(2,-3,-7)",
                                          "pretzel(-2,3,7)",  "pretzel(7,-3,5)",   "pretzel(2,-3,-9)",
                                          "montesinos(1;2/5)", "pretzel(1,1,1)",   "torus(4,5)"};
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    const KnotSpec a = spec(pool[pick(rng)]), b = spec(pool[pick(rng)]);
    KnotSpec s;
    s.kind = KnotSpec::Kind::Sum;
    s.children = {a, b};
    CAPTURE(s.to_string());
    const InvariantPackage ra = invariants(a), rb = invariants(b), rs = invariants(s);
    CHECK(ra.delta_under + rb.delta_under <= rs.delta_under);
    CHECK(rs.delta_under <= rs.delta_bar);
    CHECK(rs.delta_bar <= ra.delta_bar + rb.delta_bar);
    CHECK(rs.delta == ra.delta + rb.delta);
  }
}

TEST_CASE("K_q family and omega") {
  for (int q = 1; q <= 3; ++q) {
    CAPTURE(q);
    const InvariantPackage r = invariants(k_family(q));
    CHECK(r.conn.towers.size() == 1);
    REQUIRE(r.red_conn.torsion.size() == 1);
    CHECK(r.red_conn.torsion[0].length == q);
    CHECK(r.omega == q);
    CHECK(r.det == pretzel_det(k_family(q).params));
  }
  KnotSpec s;
  s.kind = KnotSpec::Kind::Sum;
  s.children = {k_family(1), k_family(2)};
  CHECK(invariants(s).omega == 2);
}
