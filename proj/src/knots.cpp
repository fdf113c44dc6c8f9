#include "hfb/knots.hpp"

#include "hfb/connected.hpp"
#include "hfb/errors.hpp"
#include "hfb/goeritz.hpp"
#include "hfb/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hfb {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

/// n/d = b_1 - 1/(b_2 - ...), every b_i >= 2, as weights -b_i.
std::vector<long> negative_cf_leg(long long n, long long d) {
  if (n <= d || d <= 0)
    throw InternalError("continued fraction of " + std::to_string(n) + "/" + std::to_string(d));
  std::vector<long> leg;
  while (d != 0) {
    const long long b = (n + d - 1) / d;
    leg.push_back(static_cast<long>(-b));
    const long long r = b * d - n;
    n = d;
    d = r;
  }
  return leg;
}

/// Smallest b in [1, m) with a * b = -1 mod m.
long long inverse_of_minus_one(long long a, long long m) {
  for (long long b = 1; b < m; ++b)
    if ((a % m * b + 1) % m == 0)
      return b;
  throw InternalError("no inverse");
}

Presentation finish(PlumbingTree tree, bool mirrored, Presentation::Involution inv) {
  Presentation p;
  p.k = spin_char(tree);
  p.tree = std::move(tree);
  p.mirrored = mirrored;
  p.involution = inv;
  require_negative_definite(p.tree);
  return p;
}

std::string cache_key(const Presentation &p, const KnotOptions &opts) {
  std::ostringstream s;
  for (int v = 0; v < p.tree.size(); ++v)
    s << p.tree.weight(v) << ',';
  s << '|';
  for (const auto &[a, b] : p.tree.edges())
    s << a << '-' << b << ',';
  s << '|';
  for (int v : p.tree.automorphism())
    s << v << ',';
  s << '|';
  for (long long x : p.k)
    s << x << ',';
  s << '|' << static_cast<int>(p.involution) << '|' << (opts.n_max ? *opts.n_max : -1);
  return s.str();
}

std::mutex disk_mutex;
std::string disk_dir;

std::string fnv1a(const std::string &s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<GradedRoot> disk_load(const std::string &key) {
  std::string dir;
  {
    std::lock_guard<std::mutex> lock(disk_mutex);
    dir = disk_dir;
  }
  if (dir.empty())
    return std::nullopt;
  std::ifstream in(std::filesystem::path(dir) / ("root-" + fnv1a(key) + ".json"));
  if (!in)
    return std::nullopt;
  try {
    const Json j = Json::parse(in);
    if (j.at("key") != key)
      return std::nullopt;
    return root_from_json(j.at("root"));
  } catch (const std::exception &) {
    return std::nullopt; // unreadable entries are recomputed
  }
}

void disk_store(const std::string &key, const GradedRoot &root) {
  std::lock_guard<std::mutex> lock(disk_mutex);
  if (disk_dir.empty())
    return;
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(disk_dir, ec);
  const fs::path final_path = fs::path(disk_dir) / ("root-" + fnv1a(key) + ".json");
  const fs::path tmp = final_path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out)
      return;
    out << Json{{"key", key}, {"root", root_to_json(root)}}.dump() << '\n';
  }
  fs::rename(tmp, final_path, ec); // atomic publish; concurrent writers store identical data
}

UComplex leaf_complex(const KnotSpec &leaf, bool local, const KnotOptions &opts) {
  const Presentation p = leaf_presentation(leaf);
  GradedRoot root = presentation_root(p, opts);
  if (local)
    root = monotone_subroot(root).root;
  UComplex c = model_complex(root);
  return p.mirrored ? dual(c) : c;
}

} // namespace

Presentation montesinos_plumbing(long long e, const std::vector<Fraction> &fractions) {
  // e_Y = sum r_i - e with r_i = -num_i/den_i.
  Rational e_y = -Rational(BigInt(e));
  for (const auto &f : fractions)
    e_y -= Rational(BigInt(f.num), BigInt(f.den));
  if (e_y == 0)
    throw DefinitenessError("Seifert Euler number 0: no definite presentation");
  const bool mirrored = e_y > 0;
  const long long sign = mirrored ? -1 : 1;
  long long centre = -sign * e;
  std::vector<std::vector<long>> legs;
  for (const auto &f : fractions) {
    const long long num = -sign * f.num, den = f.den; // r = num/den
    const long long fl = floor_div(num, den);
    centre += fl;
    const long long m = num - fl * den; // frac(r) = m/den
    if (m != 0)
      legs.push_back(negative_cf_leg(den, m));
  }
  return finish(PlumbingTree::star(static_cast<long>(centre), legs), mirrored, Presentation::Involution::Lattice);
}

Presentation pretzel_plumbing(const std::vector<long long> &a) {
  std::vector<Fraction> fr;
  for (long long x : a) {
    if (x == 0)
      throw InvalidInputError("pretzel entries must be non-zero");
    fr.push_back({x < 0 ? -1 : 1, std::llabs(x)});
  }
  return montesinos_plumbing(0, fr);
}

Presentation torus_plumbing(long long p, long long q) {
  const bool mirrored = (p < 0) != (q < 0);
  p = std::llabs(p);
  q = std::llabs(q);
  if (p < 2 || q < 2 || std::gcd(p, q) != 1)
    throw InvalidInputError("torus(p,q) needs |p|, |q| >= 2 and gcd(p,q) = 1");
  if (p % 2 == 1 && q % 2 == 1) {
    // Sigma(2,p,q): e0 + 1/2 + b2/p + b3/q = -1/(2pq).
    const long long b2 = inverse_of_minus_one(2 * q, p), b3 = inverse_of_minus_one(2 * p, q);
    const long long num = -1 - p * q - 2 * q * b2 - 2 * p * b3;
    if (num % (2 * p * q) != 0)
      throw InternalError("torus Seifert data");
    const long long e0 = num / (2 * p * q);
    return finish(PlumbingTree::star(static_cast<long>(e0), {{-2}, negative_cf_leg(p, b2), negative_cf_leg(q, b3)}),
                  mirrored, Presentation::Involution::Trivial);
  }
  if (q % 2 == 0)
    std::swap(p, q);
  // Quotient orbifold S^2(p', q, q): p'q e0 + q b1 + 2p' b2 = -1.
  const long long h = p / 2;
  const long long b1 = h > 1 ? inverse_of_minus_one(q, h) : 0;
  const long long b2 = inverse_of_minus_one(2 * h, q);
  const long long num = -1 - q * b1 - 2 * h * b2;
  if (num % (h * q) != 0)
    throw InternalError("torus Seifert data");
  std::vector<std::vector<long>> legs;
  if (h > 1)
    legs.push_back(negative_cf_leg(h, b1));
  const std::vector<long> swapped = negative_cf_leg(q, b2);
  legs.push_back(swapped);
  legs.push_back(swapped);
  PlumbingTree tree = PlumbingTree::star(static_cast<long>(num / (h * q)), legs);
  // Ids: centre 0, then the legs in order; swap the last two legs.
  std::vector<int> perm(static_cast<std::size_t>(tree.size()));
  std::iota(perm.begin(), perm.end(), 0);
  const int len = static_cast<int>(swapped.size());
  const int first = tree.size() - 2 * len;
  for (int i = 0; i < len; ++i) {
    perm[static_cast<std::size_t>(first + i)] = first + len + i;
    perm[static_cast<std::size_t>(first + len + i)] = first + i;
  }
  return finish(tree.with_automorphism(perm), mirrored, Presentation::Involution::Graph);
}

Presentation leaf_presentation(const KnotSpec &leaf) {
  switch (leaf.kind) {
  case KnotSpec::Kind::Torus:
    return torus_plumbing(leaf.params[0], leaf.params[1]);
  case KnotSpec::Kind::Pretzel:
    return pretzel_plumbing(leaf.params);
  case KnotSpec::Kind::Montesinos:
    return montesinos_plumbing(leaf.e, leaf.fractions);
  default:
    throw InternalError("leaf_presentation on a composite spec");
  }
}

void set_root_cache_dir(const std::string &dir) {
  std::lock_guard<std::mutex> lock(disk_mutex);
  disk_dir = dir;
}

GradedRoot presentation_root(const Presentation &p, const KnotOptions &opts) {
  static std::mutex mutex;
  static std::map<std::string, GradedRoot> cache;
  const std::string key = cache_key(p, opts);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end())
      return it->second;
  }
  if (auto stored = disk_load(key)) {
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, std::move(*stored)).first->second;
  }
  GradedRoot root = p.tree.is_star_shaped() ? build_root_star(p.tree, p.k, opts.n_max)
                                            : build_root_box(p.tree, p.k, BoxOptions{opts.n_max});
  switch (p.involution) {
  case Presentation::Involution::Lattice:
    root = lattice_involution(p.tree, p.k, root);
    break;
  case Presentation::Involution::Graph:
    root = graph_involution(p.tree, p.k, root);
    break;
  case Presentation::Involution::Trivial:
    root = root.with_trivial_involution();
    break;
  }
  if (opts.verify && p.tree.size() <= 6 && p.tree.is_star_shaped()) {
    const GradedRoot box = build_root_box(p.tree, p.k, BoxOptions{opts.n_max});
    if (canonical_form(box.with_trivial_involution()) != canonical_form(root.with_trivial_involution()))
      throw InternalError("box and star engines disagree");
  }
  if (!root.complete())
    throw InstabilityError("graded root truncated at level " + std::to_string(root.max_level()) +
                           " is not stable (need three single-vertex levels on top)");
  disk_store(key, root);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(root)).first->second;
}

UComplex knot_complex(const KnotSpec &k, bool local, const KnotOptions &opts) {
  switch (k.kind) {
  case KnotSpec::Kind::Mirror:
    return dual(knot_complex(k.children.front(), local, opts));
  case KnotSpec::Kind::Sum: {
    UComplex c = knot_complex(k.children.front(), local, opts);
    for (std::size_t i = 1; i < k.children.size(); ++i)
      c = tensor(c, knot_complex(k.children[i], local, opts));
    return c;
  }
  default:
    return leaf_complex(k, local, opts);
  }
}

std::optional<int> oracle_signature(const KnotSpec &k) {
  switch (k.kind) {
  case KnotSpec::Kind::Pretzel:
    if (k.params.size() > 5)
      return std::nullopt;
    return goeritz_oracle(k.params).signature;
  case KnotSpec::Kind::Mirror:
    if (auto s = oracle_signature(k.children.front()))
      return -*s;
    return std::nullopt;
  case KnotSpec::Kind::Sum: {
    int total = 0;
    for (const auto &c : k.children) {
      const auto s = oracle_signature(c);
      if (!s)
        return std::nullopt;
      total += *s;
    }
    return total;
  }
  default:
    return std::nullopt;
  }
}

InvariantPackage invariants(const KnotSpec &k, const KnotOptions &opts) {
  InvariantPackage out;
  out.spec = k.to_string();
  const UComplex full = knot_complex(k, false, opts);
  const UComplex local = knot_complex(k, true, opts);
  out.delta = tower_degree(full);
  const DeltaPair dp = delta_invariants(full);
  out.delta_bar = dp.upper;
  out.delta_under = dp.lower;
  out.hfb = branched_homology(full);
  out.conn = connected_homology(local, opts.limits);
  out.red_conn = out.conn.reduced();
  out.omega = out.red_conn.omega();
  out.det = knot_determinant(k);
  out.signature = oracle_signature(k);
  if (opts.verify) {
    const DeltaPair lp = delta_invariants(local);
    if (lp.upper != dp.upper || lp.lower != dp.lower)
      throw InternalError("delta invariants differ on the local model");
    // Exhaustive search over self-local maps; RankBoundError past the limits.
    if (connected_homology_bruteforce(local, opts.limits) != out.conn)
      throw InternalError("brute-force connected homology disagrees with the reduction");
    if (!(out.delta_under <= out.delta && out.delta <= out.delta_bar))
      throw InternalError("delta_under <= delta <= delta_bar fails");
    if (k.kind != KnotSpec::Kind::Mirror && k.kind != KnotSpec::Kind::Sum) {
      const Presentation p = leaf_presentation(k);
      if (abs(determinant(intersection_form(p.tree))) != BigInt(out.det))
        throw InternalError("|det Q| differs from the knot determinant");
      if (!p.mirrored && root_connected_homology(presentation_root(p, opts), true, opts.limits) != out.conn)
        throw InternalError("monotone subroot and complex reduction disagree");
    }
    if (k.kind == KnotSpec::Kind::Pretzel && k.params.size() <= 5 &&
        goeritz_oracle(k.params).determinant != out.det)
      throw InternalError("Goeritz determinant differs");
  }
  return out;
}

GradedUModule knot_connected_homology(const KnotSpec &k, const KnotOptions &opts) {
  return connected_homology(knot_complex(k, true, opts), opts.limits);
}

KnotSpec k_family(int q) {
  KnotSpec k;
  k.kind = KnotSpec::Kind::Pretzel;
  k.params = {4LL * q + 3, -2LL * q - 1, 4LL * q + 1};
  return k;
}

} // namespace hfb
