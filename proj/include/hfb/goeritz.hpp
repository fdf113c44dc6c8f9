#pragma once

#include <vector>

namespace hfb {

struct GoeritzResult {
  long long determinant = 0; // |det G|
  int signature = 0;         // Gordon-Litherland: sign(G) - mu
  int writhe = 0;            // of the standard diagram with its traced orientation
  int components = 0;
};

/// Determinant and signature of the pretzel P(a_1, ..., a_k) (k <= 5) from the
/// Goeritz matrix of its standard diagram. The shaded regions are the k
/// regions between consecutive twist columns; a column of a_i half twists
/// contributes a_i crossings of Goeritz index sign(a_i) and is of type II
/// when its two strands run in opposite directions. Throws InvalidInputError
/// for unsupported input or links.
GoeritzResult goeritz_oracle(const std::vector<long long> &a);

/// Crossing data only (works for links too).
GoeritzResult pretzel_diagram(const std::vector<long long> &a);

} // namespace hfb
