#include "hfb/errors.hpp"
#include "hfb/graded_root.hpp"
#include "root_engines.hpp"
#include "sweep.hpp"

#include <limits>

namespace hfb {

namespace {

BigInt floor_div(const Rational &x) {
  BigInt q = numerator(x) / denominator(x);
  if (q * denominator(x) > numerator(x))
    q -= 1;
  return q;
}

BigInt ceil_div(const Rational &x) { return -floor_div(-x); }

/// A leg v_1 - ... - v_m hanging off the centre at v_1. Its contribution to
/// chi with central coefficient n is
///   h(y) = sum_j (-e_j y_j^2 - k_j y_j)/2 - sum_j y_j y_{j+1} - n y_1,
/// a convex quadratic with real minimum h*(n) = -k.u/8 - n u_1/2 - n^2 z_1/2,
/// where M = -Q_leg, u = M^{-1}k, z = M^{-1}e_1.
struct Leg {
  std::vector<int> vertices;
  std::vector<long long> e, k;
  RationalVector u, z;
  Rational ku;
  long long period = 1;
  Rational max_loss = 0;

  Rational real_min(long long n) const {
    const Rational rn(n);
    return -ku / 8 - rn * u(0) / 2 - rn * rn * z(0) / 2;
  }

  /// Integer minimum of h for central coefficient n, by windowed DP around the
  /// real minimiser; the window grows until no coordinate sits on its edge.
  long long int_min(long long n, std::vector<long long> *argmin = nullptr) const {
    const std::size_t m = vertices.size();
    std::vector<long long> centre(m);
    for (std::size_t j = 0; j < m; ++j) {
      const Rational y = u(static_cast<Eigen::Index>(j)) / 2 + Rational(n) * z(static_cast<Eigen::Index>(j));
      centre[j] = static_cast<long long>(floor_div(y + Rational(1, 2)));
    }
    for (long long w = 2;; w *= 2) {
      const long long width = 2 * w + 1;
      std::vector<long long> cost(static_cast<std::size_t>(width)), next(static_cast<std::size_t>(width));
      std::vector<std::vector<int>> from(m, std::vector<int>(static_cast<std::size_t>(width), -1));
      auto self = [&](std::size_t j, long long y) { return (-e[j] * y * y - k[j] * y) / 2; };
      for (long long i = 0; i < width; ++i) {
        const long long y = centre[0] - w + i;
        cost[static_cast<std::size_t>(i)] = self(0, y) - n * y;
      }
      for (std::size_t j = 1; j < m; ++j) {
        for (long long i = 0; i < width; ++i) {
          const long long y = centre[j] - w + i;
          long long best = std::numeric_limits<long long>::max();
          int arg = -1;
          for (long long p = 0; p < width; ++p) {
            const long long yp = centre[j - 1] - w + p;
            const long long c = cost[static_cast<std::size_t>(p)] - yp * y;
            if (c < best)
              best = c, arg = static_cast<int>(p);
          }
          next[static_cast<std::size_t>(i)] = best + self(j, y);
          from[j][static_cast<std::size_t>(i)] = arg;
        }
        std::swap(cost, next);
      }
      long long best = std::numeric_limits<long long>::max();
      int arg = -1;
      for (long long i = 0; i < width; ++i)
        if (cost[static_cast<std::size_t>(i)] < best)
          best = cost[static_cast<std::size_t>(i)], arg = static_cast<int>(i);
      std::vector<int> idx(m);
      idx[m - 1] = arg;
      for (std::size_t j = m - 1; j > 0; --j)
        idx[j - 1] = from[j][static_cast<std::size_t>(idx[j])];
      bool interior = true;
      for (std::size_t j = 0; j < m; ++j)
        if (idx[j] == 0 || idx[j] == width - 1)
          interior = false;
      if (!interior)
        continue;
      if (argmin) {
        argmin->resize(m);
        for (std::size_t j = 0; j < m; ++j)
          (*argmin)[j] = centre[j] - w + idx[j];
      }
      return best;
    }
  }
};

constexpr long long kMaxPeriod = 1'000'000;

Leg make_leg(const PlumbingTree &t, const CharVector &k, int centre, int first) {
  Leg leg;
  int prev = centre, cur = first;
  while (cur >= 0) {
    leg.vertices.push_back(cur);
    int nxt = -1;
    for (int w : t.neighbours(cur))
      if (w != prev) {
        if (nxt >= 0)
          throw InvalidInputError("star engine: tree is not star-shaped");
        nxt = w;
      }
    prev = cur;
    cur = nxt;
  }
  const auto m = static_cast<Eigen::Index>(leg.vertices.size());
  IntMatrix mm = IntMatrix::Zero(m, m);
  IntVector kv(m), e1 = IntVector::Zero(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const int v = leg.vertices[static_cast<std::size_t>(j)];
    leg.e.push_back(t.weight(v));
    leg.k.push_back(k[static_cast<std::size_t>(v)]);
    mm(j, j) = -t.weight(v);
    kv(j) = k[static_cast<std::size_t>(v)];
    if (j + 1 < m)
      mm(j, j + 1) = mm(j + 1, j) = -1;
  }
  e1(0) = 1;
  leg.u = solve_exact(mm, kv);
  leg.z = solve_exact(mm, e1);
  leg.ku = 0;
  for (Eigen::Index j = 0; j < m; ++j)
    leg.ku += Rational(kv(j)) * leg.u(j);
  const BigInt det = boost::multiprecision::abs(determinant(mm));
  if (det > kMaxPeriod)
    throw InvalidInputError("star engine: leg determinant too large for the periodic loss bound");
  leg.period = static_cast<long long>(det);
  // h_int - h* is periodic in n with period det(M): shifting n by det(M)
  // shifts the real minimiser by an integral vector.
  for (long long n = 0; n < leg.period; ++n) {
    const Rational loss = Rational(leg.int_min(n)) - leg.real_min(n);
    if (loss < 0)
      throw InternalError("star engine: integer minimum below the real minimum");
    if (loss > leg.max_loss)
      leg.max_loss = loss;
  }
  return leg;
}

} // namespace

namespace detail {

GradedRoot build_root_star_mapped(const PlumbingTree &t, const CharVector &k, std::optional<int> n_max,
                                  const CentralMap *map) {
  if (!t.is_star_shaped())
    throw InvalidInputError("star engine: tree is not star-shaped");
  require_negative_definite(t);
  if (!is_characteristic(t, k))
    throw InvalidInputError("star engine: k is not characteristic");
  const int c = t.centre();
  std::vector<Leg> legs;
  for (int w : t.neighbours(c))
    legs.push_back(make_leg(t, k, c, w));

  const long long ec = t.weight(c), kc = k[static_cast<std::size_t>(c)];
  // F(n) = a n^2 + b n + const bounds the profile f from below; f - F <= C.
  Rational a = Rational(-ec, 2), b = Rational(-kc, 2), C = 0;
  for (const auto &leg : legs) {
    a -= leg.z(0) / 2;
    b -= leg.u(0) / 2;
    C += leg.max_loss;
  }
  if (a <= 0)
    throw InternalError("star engine: profile is not convex");
  // Outside [lo, hi] the profile is strictly monotone.
  const long long lo = static_cast<long long>(ceil_div((a - b - C) / (2 * a))) - 1;
  const long long hi = static_cast<long long>(floor_div((C - b - a) / (2 * a))) + 1;

  const std::size_t npts = static_cast<std::size_t>(hi - lo + 1);
  std::vector<long long> values(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    const long long n = lo + static_cast<long long>(i);
    long long v = -(kc * n + ec * n * n) / 2;
    for (const auto &leg : legs)
      v += leg.int_min(n);
    values[i] = v;
  }
  std::vector<std::uint32_t> order(npts);
  for (std::size_t i = 0; i < npts; ++i)
    order[i] = static_cast<std::uint32_t>(i);
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return values[x] != values[y] ? values[x] < values[y] : x < y;
  });
  const long long vmax = values[order.back()];

  auto neighbours = [&](std::uint32_t p, std::vector<std::uint32_t> &out) {
    if (p > 0)
      out.push_back(p - 1);
    if (p + 1 < npts)
      out.push_back(p + 1);
  };
  auto image = [&](std::uint32_t p) -> long long {
    long long m = (*map)(lo + static_cast<long long>(p));
    // beyond the window the sublevel set is an extension of the end interval
    m = std::clamp(m, lo, hi);
    return m - lo;
  };
  auto stop = [&](long long level, int, int) { return level >= vmax || (n_max && level >= *n_max); };
  const SweepRoot s = sweep(values, order, neighbours, image, map != nullptr, stop);

  std::vector<LatticePoint> reps;
  for (auto p : s.rep) {
    const long long n = lo + static_cast<long long>(p);
    LatticePoint l(static_cast<std::size_t>(t.size()), 0);
    l[static_cast<std::size_t>(c)] = n;
    for (const auto &leg : legs) {
      std::vector<long long> y;
      leg.int_min(n, &y);
      for (std::size_t j = 0; j < y.size(); ++j)
        l[static_cast<std::size_t>(leg.vertices[j])] = y[j];
    }
    reps.push_back(std::move(l));
  }
  GradedRoot root =
      GradedRoot::from_parts(root_base_weight(t, k), s.level, s.succ, std::move(reps), s.inv, RootEngine::Star, true);
  const int target = n_max ? *n_max : root.truncation_level() + 2;
  if (target < root.max_level())
    return root.truncated(target);
  return root.extended(target);
}

} // namespace detail

GradedRoot build_root_star(const PlumbingTree &t, const CharVector &k, std::optional<int> n_max) {
  return detail::build_root_star_mapped(t, k, n_max, nullptr);
}

} // namespace hfb
