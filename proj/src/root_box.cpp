#include "hfb/errors.hpp"
#include "hfb/graded_root.hpp"
#include "sweep.hpp"

#include <cmath>
#include <limits>

namespace hfb {

namespace {

struct Box {
  int n;
  int radius;
  std::vector<long long> side;   // per coordinate
  std::vector<long long> lo;     // lower corner
  std::vector<long long> stride; // coordinate 0 most significant
  std::size_t volume;

  LatticePoint decode(std::size_t i) const {
    LatticePoint x(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
      const auto sj = static_cast<std::size_t>(side[static_cast<std::size_t>(j)]);
      x[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] + static_cast<long long>(i % sj);
      i /= sj;
    }
    return x;
  }
  long long encode(const LatticePoint &x) const {
    long long i = 0;
    for (int j = 0; j < n; ++j) {
      const long long c = x[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)];
      if (c < 0 || c >= side[static_cast<std::size_t>(j)])
        return -1;
      i += c * stride[static_cast<std::size_t>(j)];
    }
    return i;
  }
};

Box make_box(const PlumbingTree &t, const CharVector &k, int radius, std::size_t max_points) {
  if (radius < 1)
    throw InvalidInputError("box engine: radius must be at least 1");
  Box b;
  b.n = t.size();
  b.radius = radius;
  const IntMatrix q = intersection_form(t);
  // Half-width along v is ceil(radius * sqrt(-Q^{-1}_vv)): the projection of
  // {chi <= min chi + radius^2/2} onto that coordinate.
  b.side.resize(static_cast<std::size_t>(b.n));
  double vol = 1;
  std::vector<long long> half(static_cast<std::size_t>(b.n));
  for (int j = 0; j < b.n; ++j) {
    IntVector e = IntVector::Zero(b.n);
    e(j) = 1;
    const Rational s = -solve_exact(q, e)(j);
    const double h = std::ceil(radius * std::sqrt(s.convert_to<double>()) - 1e-9);
    half[static_cast<std::size_t>(j)] = std::max<long long>(1, static_cast<long long>(h));
    b.side[static_cast<std::size_t>(j)] = 2 * half[static_cast<std::size_t>(j)] + 1;
    vol *= static_cast<double>(b.side[static_cast<std::size_t>(j)]);
  }
  if (vol > static_cast<double>(max_points))
    throw InstabilityError("box engine: box of radius " + std::to_string(radius) + " in dimension " +
                           std::to_string(b.n) + " exceeds the point budget");
  b.volume = static_cast<std::size_t>(vol);
  // centre at the rounded real minimiser -Q^{-1}k/2
  IntVector kv(b.n);
  for (int j = 0; j < b.n; ++j)
    kv(j) = k[static_cast<std::size_t>(j)];
  const RationalVector centre = -solve_exact(q, kv) / 2;
  b.lo.resize(static_cast<std::size_t>(b.n));
  b.stride.assign(static_cast<std::size_t>(b.n), 1);
  for (int j = 0; j < b.n; ++j) {
    const Rational c = centre(j) + Rational(1, 2);
    BigInt fl = numerator(c) / denominator(c);
    if (fl * denominator(c) > numerator(c))
      fl -= 1;
    b.lo[static_cast<std::size_t>(j)] = static_cast<long long>(fl) - half[static_cast<std::size_t>(j)];
  }
  for (int j = b.n - 2; j >= 0; --j)
    b.stride[static_cast<std::size_t>(j)] =
        b.stride[static_cast<std::size_t>(j) + 1] * b.side[static_cast<std::size_t>(j) + 1];
  return b;
}

} // namespace

GradedRoot build_root_box_once(const PlumbingTree &t, const CharVector &k, std::optional<int> n_max, int radius,
                               const LatticeMap *map) {
  return build_root_box_once_budget(t, k, n_max, radius, map, BoxOptions{}.max_points);
}

GradedRoot build_root_box_once_budget(const PlumbingTree &t, const CharVector &k, std::optional<int> n_max,
                                      int radius, const LatticeMap *map, std::size_t max_points) {
  require_negative_definite(t);
  if (!is_characteristic(t, k))
    throw InvalidInputError("box engine: k is not characteristic");
  const Box box = make_box(t, k, radius, max_points);
  const std::size_t npts = box.volume;
  const int n = box.n;

  std::vector<long long> values(npts);
  long long boundary_min = std::numeric_limits<long long>::max();
  {
    LatticePoint x = box.decode(0);
    for (std::size_t i = 0; i < npts; ++i) {
      values[i] = chi(t, k, x);
      bool on_boundary = false;
      for (int j = 0; j < n; ++j) {
        const long long c = x[static_cast<std::size_t>(j)] - box.lo[static_cast<std::size_t>(j)];
        if (c == 0 || c == box.side[static_cast<std::size_t>(j)] - 1)
          on_boundary = true;
      }
      if (on_boundary)
        boundary_min = std::min(boundary_min, values[i]);
      // odometer increment, last coordinate fastest
      for (int j = n - 1; j >= 0; --j) {
        auto &c = x[static_cast<std::size_t>(j)];
        if (++c < box.lo[static_cast<std::size_t>(j)] + box.side[static_cast<std::size_t>(j)])
          break;
        c = box.lo[static_cast<std::size_t>(j)];
      }
    }
  }
  std::vector<std::uint32_t> order(npts);
  for (std::size_t i = 0; i < npts; ++i)
    order[i] = static_cast<std::uint32_t>(i);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return values[a] != values[b] ? values[a] < values[b] : a < b;
  });
  const long long vmax = values[order.back()];

  auto neighbours = [&](std::uint32_t p, std::vector<std::uint32_t> &out) {
    std::size_t rest = p;
    for (int j = n - 1; j >= 0; --j) {
      const long long side = box.side[static_cast<std::size_t>(j)];
      const auto c = static_cast<long long>(rest % static_cast<std::size_t>(side));
      rest /= static_cast<std::size_t>(side);
      const auto s = static_cast<std::uint32_t>(box.stride[static_cast<std::size_t>(j)]);
      if (c > 0)
        out.push_back(p - s);
      if (c < side - 1)
        out.push_back(p + s);
    }
  };
  auto image = [&](std::uint32_t p) -> long long { return box.encode((*map)(box.decode(p))); };
  auto stop = [&](long long level, int, int run) {
    if (level >= vmax)
      return true;
    if (n_max)
      return level >= *n_max;
    return run >= 3 || level >= boundary_min - 1;
  };
  const detail::SweepRoot s = detail::sweep(values, order, neighbours, image, map != nullptr, stop);

  const long long top = s.level.empty() ? 0 : s.level.back();
  const bool exact = top < boundary_min;
  std::vector<LatticePoint> reps;
  reps.reserve(s.rep.size());
  for (auto p : s.rep)
    reps.push_back(box.decode(p));
  GradedRoot root = GradedRoot::from_parts(root_base_weight(t, k), s.level, s.succ, std::move(reps), s.inv,
                                           RootEngine::Box, exact);
  root.set_build_radius(radius);
  return root;
}

GradedRoot build_root_box(const PlumbingTree &t, const CharVector &k, const BoxOptions &opts, const LatticeMap *map) {
  int r = opts.radius;
  for (;;) {
    GradedRoot cur = build_root_box_once_budget(t, k, opts.n_max, r, map, opts.max_points);
    if (!opts.grow)
      return cur;
    if (cur.complete() || (opts.n_max && cur.exact())) {
      const std::optional<int> deeper = opts.n_max ? std::optional<int>(*opts.n_max + 1) : std::nullopt;
      GradedRoot check = build_root_box_once_budget(t, k, deeper, r + 1, map, opts.max_points);
      if (check.exact() && isomorphic(cur, check))
        return cur;
    }
    r *= 2;
  }
}

} // namespace hfb
