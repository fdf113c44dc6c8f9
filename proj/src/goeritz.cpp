#include "hfb/goeritz.hpp"

#include "hfb/errors.hpp"
#include "hfb/exact_linalg.hpp"

#include <array>
#include <cstdlib>

namespace hfb {

namespace {

// Column endpoints: 4 * column + {0: top-left, 1: top-right, 2: bottom-left, 3: bottom-right}.
enum Corner { TL = 0, TR = 1, BL = 2, BR = 3 };

} // namespace

GoeritzResult pretzel_diagram(const std::vector<long long> &a) {
  const std::size_t k = a.size();
  if (k == 0)
    throw InvalidInputError("pretzel needs at least one column");
  // Inside column i the strand entering at TL leaves at BR for an odd number
  // of crossings and at BL otherwise.
  auto inner = [&](std::size_t end) -> std::size_t {
    const std::size_t col = end / 4, c = end % 4;
    const bool odd = std::llabs(a[col]) % 2 == 1;
    static constexpr std::array<std::size_t, 4> odd_map{BR, BL, TR, TL}, even_map{BL, BR, TL, TR};
    return 4 * col + (odd ? odd_map[c] : even_map[c]);
  };
  // Arcs outside the columns join neighbouring columns and close up around.
  auto outer = [&](std::size_t end) -> std::size_t {
    const std::size_t col = end / 4, c = end % 4;
    switch (c) {
    case TR:
      return 4 * ((col + 1) % k) + TL;
    case TL:
      return 4 * ((col + k - 1) % k) + TR;
    case BR:
      return 4 * ((col + 1) % k) + BL;
    default:
      return 4 * ((col + k - 1) % k) + BR;
    }
  };
  // Direction of travel of the strand starting at each column's TL and TR
  // corner: +1 downwards, -1 upwards.
  std::vector<std::array<int, 2>> dir(k, {0, 0});
  GoeritzResult r;
  for (std::size_t col = 0; col < k; ++col)
    for (int side = 0; side < 2; ++side) {
      if (dir[col][side] != 0)
        continue;
      ++r.components;
      // Enter at the top corner going down and trace the component.
      std::size_t end = 4 * col + static_cast<std::size_t>(side);
      for (;;) {
        const std::size_t c = end / 4, corner = end % 4;
        const bool top = corner == TL || corner == TR;
        // Identify the strand by its top corner.
        const std::size_t exit = inner(end);
        const int s = top ? static_cast<int>(corner) : static_cast<int>(exit % 4);
        if (dir[c][s] != 0)
          break;
        dir[c][s] = top ? 1 : -1;
        end = outer(exit);
      }
    }
  // Crossing j (1-based) of a column: the strand on the left above it runs
  // from upper left to lower right; that is the TL strand for odd j. Positive
  // a puts the other strand over, so P(-2,3,7) is a positive diagram.
  for (std::size_t col = 0; col < k; ++col) {
    const long long n = std::llabs(a[col]);
    for (long long j = 1; j <= n; ++j) {
      const int back = (j % 2 == 1) ? dir[col][0] : dir[col][1];  // "\" strand
      const int fwd = (j % 2 == 1) ? dir[col][1] : dir[col][0];   // "/" strand
      const std::array<int, 2> vb{back, -back}, vf{-fwd, -fwd};
      const auto &over = a[col] > 0 ? vf : vb;
      const auto &under = a[col] > 0 ? vb : vf;
      const int cross = over[0] * under[1] - over[1] * under[0];
      r.writhe += cross > 0 ? 1 : -1;
    }
  }
  // Shaded regions B_0 (outside) and B_i between columns i and i+1; column i
  // joins B_i and B_{i+1 mod k}. Delete B_0 to get the Goeritz matrix.
  IntMatrix g = IntMatrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  long long mu = 0;
  for (std::size_t col = 0; col < k; ++col) {
    const auto i = static_cast<Eigen::Index>(col), j = static_cast<Eigen::Index>((col + 1) % k);
    const long long w = a[col]; // |a| crossings of Goeritz index sign(a)
    g(i, i) += w;
    g(j, j) += w;
    g(i, j) -= w;
    g(j, i) -= w;
    if (dir[col][0] == dir[col][1])
      mu += w; // type II: parallel strands
  }
  const IntMatrix reduced = g.bottomRightCorner(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k - 1));
  const BigInt det = k == 1 ? BigInt(1) : determinant(reduced);
  r.determinant = static_cast<long long>(abs(det));
  if (r.determinant != 0)
    r.signature = (k == 1 ? 0 : hfb::signature(reduced)) - static_cast<int>(mu);
  return r;
}

GoeritzResult goeritz_oracle(const std::vector<long long> &a) {
  if (a.size() > 5)
    throw InvalidInputError("the Goeritz oracle handles pretzels with at most five columns");
  GoeritzResult r = pretzel_diagram(a);
  if (r.components != 1)
    throw InvalidInputError("pretzel is a link with " + std::to_string(r.components) + " components");
  return r;
}

} // namespace hfb
