// hfb: branched and connected Floer invariants of arborescent knots.
//
//   hfb invariants SPEC...     invariant package per spec (input order)
//   hfb root [SPEC | -]        graded root with involution; plumbing JSON on stdin
//   hfb independence SPEC...   omega-based independence certificate
//
// Exit codes: 0 ok, 1 internal error, 2 parse error, 3 no definite
// presentation, 4 unstable truncation, 5 rank bound hit, 6 invalid input,
// 64 usage.

#include "hfb/connected.hpp"
#include "hfb/errors.hpp"
#include "hfb/knots.hpp"
#include "hfb/serialize.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

using namespace hfb;

namespace {

enum Exit { kOk = 0, kInternal = 1, kParse = 2, kDefiniteness = 3, kInstability = 4, kRankBound = 5, kInvalid = 6,
            kUsage = 64 };

struct Failure {
  int code = kOk;
  std::string message;
};

// Runs f and maps library errors to exit codes.
Failure guarded(const std::function<void()> &f) {
  try {
    f();
    return {};
  } catch (const ParseError &e) {
    return {kParse, e.what()};
  } catch (const DefinitenessError &e) {
    return {kDefiniteness, e.what()};
  } catch (const InstabilityError &e) {
    return {kInstability, e.what()};
  } catch (const RankBoundError &e) {
    return {kRankBound, e.what()};
  } catch (const InvalidInputError &e) {
    return {kInvalid, e.what()};
  } catch (const std::exception &e) {
    return {kInternal, e.what()};
  }
}

struct Config {
  std::optional<int> n_max;
  std::optional<int> box;
  std::size_t rank_bound = SearchLimits{}.rank_bound;
  int workers = 1;
  std::string format = "json";
  bool verify = false;

  KnotOptions knot_options() const {
    KnotOptions o;
    o.n_max = n_max;
    o.limits.rank_bound = rank_bound;
    o.verify = verify;
    return o;
  }
};

// Calls job(i) for i < n on up to `workers` threads; results are written by
// index so output order never depends on scheduling.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)> &job) {
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;)
      job(i);
  };
  std::vector<std::thread> pool;
  const std::size_t extra = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1))) - (n ? 1 : 0);
  for (std::size_t t = 0; t < extra; ++t)
    pool.emplace_back(run);
  run();
  for (auto &t : pool)
    t.join();
}

std::string rational_text(const Rational &x) { return to_string(x); }

std::string package_text(const InvariantPackage &p) {
  using P = InvariantPackage;
  std::ostringstream os;
  os << p.spec << "\n"
     << "  delta       " << rational_text(P::hf_minus(p.delta)) << "\n"
     << "  delta_bar   " << rational_text(P::hf_minus(p.delta_bar)) << "\n"
     << "  delta_under " << rational_text(P::hf_minus(p.delta_under)) << "\n"
     << "  HFB         " << P::hf_minus(p.hfb).to_string() << "\n"
     << "  HFB_conn    " << P::hf_minus(p.conn).to_string() << "\n"
     << "  HFB_red     " << P::hf_minus(p.red_conn).to_string() << "\n"
     << "  omega       " << p.omega << "\n"
     << "  det         " << p.det << "\n"
     << "  signature   " << (p.signature ? std::to_string(*p.signature) : "n/a") << "\n";
  return os.str();
}

Json failure_json(const std::string &spec, const Failure &f) {
  return {{"schema", kSchemaVersion}, {"spec", spec}, {"error", f.message}, {"exit_code", f.code}};
}

int cmd_invariants(const std::vector<std::string> &specs, const Config &cfg) {
  if (cfg.format == "dot") {
    std::cerr << "hfb: --format dot applies to 'root' only\n";
    return kUsage;
  }
  std::vector<InvariantPackage> out(specs.size());
  std::vector<Failure> fail(specs.size());
  parallel_for(specs.size(), cfg.workers, [&](std::size_t i) {
    fail[i] = guarded([&] { out[i] = invariants(parse_knot_spec(specs[i]), cfg.knot_options()); });
  });
  int code = kOk;
  Json results = Json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (fail[i].code != kOk) {
      std::cerr << "hfb: '" << specs[i] << "': " << fail[i].message << "\n";
      if (code == kOk)
        code = fail[i].code;
    }
    if (cfg.format == "json")
      results.push_back(fail[i].code == kOk ? package_to_json(out[i]) : failure_json(specs[i], fail[i]));
    else if (fail[i].code == kOk)
      std::cout << package_text(out[i]);
  }
  if (cfg.format == "json")
    std::cout << (results.size() == 1 ? results[0] : results).dump(2) << "\n";
  return code;
}

std::string read_all(std::istream &in) { return {std::istreambuf_iterator<char>(in), {}}; }

int cmd_root(const std::string &input, const Config &cfg) {
  GradedRoot root;
  Failure f = guarded([&] {
    Presentation p;
    if (input.empty() || input == "-") {
      Json j;
      try {
        j = Json::parse(read_all(std::cin));
      } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("plumbing JSON: ") + e.what());
      }
      p.tree = plumbing_from_json(j);
      require_negative_definite(p.tree);
      p.k = spin_char(p.tree);
      p.involution = p.tree.has_automorphism() ? Presentation::Involution::Graph : Presentation::Involution::Lattice;
    } else {
      const KnotSpec k = parse_knot_spec(input);
      if (k.kind == KnotSpec::Kind::Mirror || k.kind == KnotSpec::Kind::Sum)
        throw InvalidInputError("root needs a torus, pretzel or montesinos spec");
      p = leaf_presentation(k);
      if (p.mirrored)
        std::cerr << "hfb: note: the root is that of the mirror, whose cover bounds a negative-definite plumbing\n";
    }
    if (cfg.box || !p.tree.is_star_shaped()) {
      BoxOptions opts;
      opts.n_max = cfg.n_max;
      if (cfg.box)
        opts.radius = *cfg.box;
      root = build_root_box(p.tree, p.k, opts);
    } else {
      root = build_root_star(p.tree, p.k, cfg.n_max);
    }
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
  });
  if (f.code != kOk) {
    std::cerr << "hfb: " << f.message << "\n";
    return f.code;
  }
  if (cfg.format == "dot")
    std::cout << render_dot(root);
  else if (cfg.format == "text")
    std::cout << canonical_form(root) << "\n";
  else
    std::cout << root_to_json(root).dump(2) << "\n";
  if (!root.complete()) {
    std::cerr << "hfb: warning: unstable truncation at level " << root.max_level()
              << " (fewer than three single-vertex levels on top)\n";
    return kInstability;
  }
  return kOk;
}

int cmd_independence(const std::vector<std::string> &specs, const Config &cfg) {
  if (cfg.format == "dot") {
    std::cerr << "hfb: --format dot applies to 'root' only\n";
    return kUsage;
  }
  std::vector<KnotSpec> knots(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Failure f = guarded([&] { knots[i] = parse_knot_spec(specs[i]); });
    if (f.code != kOk) {
      std::cerr << "hfb: '" << specs[i] << "': " << f.message << "\n";
      return f.code;
    }
  }
  // Formal sums: every subset with at least two members when there are at most
  // five specs, otherwise the pairs.
  std::vector<std::vector<std::size_t>> subsets;
  const std::size_t n = knots.size();
  for (std::size_t i = 0; i < n; ++i)
    subsets.push_back({i});
  if (n <= 5) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
      if (std::popcount(mask) >= 2) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (1u << i))
            s.push_back(i);
        subsets.push_back(s);
      }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        subsets.push_back({i, j});
  }
  std::vector<int> omega(subsets.size(), 0);
  std::vector<Failure> fail(subsets.size());
  const KnotOptions opts = cfg.knot_options();
  parallel_for(subsets.size(), cfg.workers, [&](std::size_t s) {
    fail[s] = guarded([&] {
      KnotSpec k;
      if (subsets[s].size() == 1) {
        k = knots[subsets[s][0]];
      } else {
        k.kind = KnotSpec::Kind::Sum;
        for (std::size_t i : subsets[s])
          k.children.push_back(knots[i]);
      }
      omega[s] = knot_connected_homology(k, opts).omega();
    });
  });
  for (std::size_t s = 0; s < subsets.size(); ++s)
    if (fail[s].code != kOk) {
      std::cerr << "hfb: " << fail[s].message << "\n";
      return fail[s].code;
    }

  // The certificate covers the specs with omega > 0: their values must be
  // pairwise distinct and omega of each computed sum must be the maximum over
  // its members, so the largest omega on either side of a relation survives.
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < n; ++i)
    if (omega[i] > 0)
      positive.push_back(i);
  bool distinct = true;
  for (std::size_t a = 0; a < positive.size(); ++a)
    for (std::size_t b = a + 1; b < positive.size(); ++b)
      distinct = distinct && omega[positive[a]] != omega[positive[b]];
  bool max_rule = true;
  for (std::size_t s = n; s < subsets.size(); ++s) {
    int expect = 0;
    for (std::size_t i : subsets[s])
      expect = std::max(expect, omega[i]);
    max_rule = max_rule && omega[s] == expect;
  }
  const bool certified = !positive.empty() && distinct && max_rule;
  std::string reason = certified ? "distinct positive omega values, sums realise the maximum"
                       : positive.empty() ? "no spec has positive omega"
                       : !distinct        ? "omega values tie"
                                          : "some sum does not realise the maximal omega";

  Json sums = Json::array();
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    Json members = Json::array();
    for (std::size_t i : subsets[s])
      members.push_back(knots[i].to_string());
    sums.push_back({{"members", members}, {"omega", omega[s]}});
  }
  Json certified_specs = Json::array(), excluded = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    (omega[i] > 0 ? certified_specs : excluded).push_back(knots[i].to_string());
  if (cfg.format == "json") {
    std::cout << Json{{"schema", kSchemaVersion},
                      {"omega", sums},
                      {"certified", certified},
                      {"independent", certified ? certified_specs : Json::array()},
                      {"omega_zero", excluded},
                      {"reason", reason}}
                     .dump(2)
              << "\n";
  } else {
    for (std::size_t s = 0; s < subsets.size(); ++s)
      std::cout << "omega " << sums[s]["members"].dump() << " = " << omega[s] << "\n";
    std::cout << (certified ? "certified: " : "no certificate: ") << reason << "\n";
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Branched and connected Heegaard Floer invariants of arborescent knots"};
  app.require_subcommand(1);
  Config cfg;
  if (const char *dir = std::getenv("HFB_CACHE_DIR"))
    set_root_cache_dir(dir);

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--n-max", cfg.n_max, "Root truncation level override")->check(CLI::NonNegativeNumber);
    sub->add_option("--box", cfg.box, "Use the box engine with this initial radius")->check(CLI::PositiveNumber);
    sub->add_option("--rank-bound", cfg.rank_bound, "Rank bound for brute-force self-local searches")
        ->check(CLI::PositiveNumber);
    sub->add_option("--workers", cfg.workers, "Parallel pipelines")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
    sub->add_flag("--verify", cfg.verify, "Run cross-oracle checks inline");
  };

  std::vector<std::string> specs;
  std::string root_input;
  auto *inv = app.add_subcommand("invariants", "Invariant package of each knot spec");
  inv->add_option("specs", specs, "Knot specs, e.g. \"pretzel(2,-3,-7)\"")->required();
  add_common(inv);
  auto *root = app.add_subcommand("root", "Graded root with involution (spec, or plumbing JSON on stdin)");
  root->add_option("input", root_input, "Knot spec, or '-' / nothing for plumbing JSON on stdin");
  add_common(root);
  auto *ind = app.add_subcommand("independence", "Omega-based independence certificate");
  ind->add_option("specs", specs, "Knot specs")->required();
  add_common(ind);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  if (*inv)
    return cmd_invariants(specs, cfg);
  if (*root)
    return cmd_root(root_input, cfg);
  return cmd_independence(specs, cfg);
}
