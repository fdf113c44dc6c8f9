#include "hfb/serialize.hpp"

#include "hfb/errors.hpp"

#include <limits>
#include <map>

namespace hfb {

namespace {

long long to_ll(const BigInt &x) {
  if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
    throw InvalidInputError("integer out of 64-bit range: " + to_string(x));
  return static_cast<long long>(x);
}

const Json &field(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T> T as(const Json &j, const char *what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception &) {
    throw ParseError(std::string("bad value for ") + what);
  }
}

Json sparse(const F2Matrix &m, const std::vector<long long> &deg, long long s) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c : m.row(r).support())
      out.push_back({r, c, (deg[r] - deg[c] - s) / 2});
  return out;
}

} // namespace

Json rational_to_json(const Rational &x) { return {to_ll(numerator(x)), to_ll(denominator(x))}; }

Rational rational_from_json(const Json &j) {
  if (j.is_number_integer())
    return Rational(BigInt(j.get<long long>()));
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ParseError("rational must be [numerator, denominator]");
  BigInt num = j[0].get<long long>(), den = j[1].get<long long>();
  if (den == 0)
    throw ParseError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

Json plumbing_to_json(const PlumbingTree &t) {
  std::map<long, int> by_id;
  for (int v = 0; v < t.size(); ++v)
    by_id[t.id(v)] = v;
  Json vertices = Json::array();
  for (const auto &[id, v] : by_id)
    vertices.push_back({{"id", id}, {"weight", t.weight(v)}});
  std::vector<std::pair<long, long>> edges;
  for (const auto &[a, b] : t.edges())
    edges.emplace_back(std::min(t.id(a), t.id(b)), std::max(t.id(a), t.id(b)));
  std::sort(edges.begin(), edges.end());
  Json out{{"vertices", vertices}, {"edges", Json::array()}};
  for (const auto &[a, b] : edges)
    out["edges"].push_back({a, b});
  if (t.has_automorphism()) {
    Json aut = Json::array();
    for (const auto &[id, v] : by_id)
      aut.push_back({id, t.id(t.automorphism()[static_cast<std::size_t>(v)])});
    out["automorphism"] = aut;
  }
  return out;
}

PlumbingTree plumbing_from_json(const Json &j) {
  std::vector<long> ids, weights;
  const Json &vs = field(j, "vertices");
  if (!vs.is_array() || vs.empty())
    throw ParseError("'vertices' must be a non-empty array");
  for (const auto &v : vs) {
    ids.push_back(as<long>(field(v, "id"), "vertex id"));
    weights.push_back(as<long>(field(v, "weight"), "vertex weight"));
  }
  std::vector<std::pair<long, long>> edges;
  if (j.contains("edges"))
    for (const auto &e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw ParseError("edges must be [id, id] pairs");
      edges.emplace_back(as<long>(e[0], "edge end"), as<long>(e[1], "edge end"));
    }
  std::optional<std::vector<std::pair<long, long>>> aut;
  if (j.contains("automorphism") && !j.at("automorphism").is_null()) {
    aut.emplace();
    const Json &a = j.at("automorphism");
    if (a.is_object()) {
      for (const auto &[key, value] : a.items()) {
        long from = 0;
        try {
          from = std::stol(key);
        } catch (const std::exception &) {
          throw ParseError("automorphism keys must be vertex ids");
        }
        aut->emplace_back(from, as<long>(value, "automorphism image"));
      }
    } else if (a.is_array()) {
      for (const auto &p : a) {
        if (!p.is_array() || p.size() != 2)
          throw ParseError("automorphism entries must be [id, id] pairs");
        aut->emplace_back(as<long>(p[0], "automorphism id"), as<long>(p[1], "automorphism image"));
      }
    } else {
      throw ParseError("automorphism must be an object or a list of pairs");
    }
  }
  return PlumbingTree(ids, weights, edges, aut);
}

Json root_to_json(const GradedRoot &root) {
  Json vertices = Json::array(), succ = Json::object(), inv = Json::object(), leaves = Json::array();
  for (int v = 0; v < root.size(); ++v) {
    vertices.push_back({{"id", v},
                        {"level", root.level(v)},
                        {"weight", rational_to_json(root.weight(v))},
                        {"rep", root.representative(v)}});
    if (root.successor(v) >= 0)
      succ[std::to_string(v)] = root.successor(v);
    if (root.has_involution())
      inv[std::to_string(v)] = root.involution(v);
  }
  for (int v : root.leaves())
    leaves.push_back(v);
  return {{"schema", kSchemaVersion}, {"base_weight", rational_to_json(root.base_weight())},
          {"exact", root.exact()},    {"vertices", vertices},
          {"successor", succ},        {"leaves", leaves},
          {"involution", inv}};
}

GradedRoot root_from_json(const Json &j) {
  const Json &vs = field(j, "vertices");
  const std::size_t n = vs.size();
  std::vector<int> level(n), succ(n, -1), inv;
  std::vector<LatticePoint> rep(n);
  for (const auto &v : vs) {
    const auto id = as<std::size_t>(field(v, "id"), "root vertex id");
    if (id >= n)
      throw ParseError("root vertex ids must be 0..n-1");
    level[id] = as<int>(field(v, "level"), "level");
    if (v.contains("rep"))
      rep[id] = as<LatticePoint>(v.at("rep"), "rep");
  }
  for (const auto &[key, value] : field(j, "successor").items())
    succ[static_cast<std::size_t>(std::stoul(key))] = as<int>(value, "successor");
  const Json &ij = field(j, "involution");
  if (!ij.empty()) {
    inv.resize(n);
    for (const auto &[key, value] : ij.items())
      inv[static_cast<std::size_t>(std::stoul(key))] = as<int>(value, "involution");
  }
  const Rational base = j.contains("base_weight") ? rational_from_json(j.at("base_weight")) : Rational(0);
  const bool exact = j.contains("exact") ? as<bool>(j.at("exact"), "exact") : true;
  return GradedRoot::from_parts(base, level, succ, rep, inv, RootEngine::Abstract, exact);
}

Json torsion_to_json(const GradedUModule &m) {
  Json out = Json::array();
  for (const auto &t : m.torsion)
    out.push_back({{"degree", rational_to_json(t.degree)}, {"length", t.length}});
  return out;
}

Json module_to_json(const GradedUModule &m) {
  Json towers = Json::array();
  for (const auto &t : m.towers)
    towers.push_back(rational_to_json(t));
  return {{"towers", towers}, {"torsion", torsion_to_json(m)}, {"text", m.to_string()}};
}

Json complex_to_json(const UComplex &c) {
  Json gens = Json::array();
  for (std::size_t i = 0; i < c.size(); ++i)
    gens.push_back({{"name", c.name(i)}, {"grading", rational_to_json(c.grading(i))}});
  return {{"generators", gens},
          {"differential", sparse(c.differential(), c.degrees(), -1)},
          {"iota", sparse(c.iota(), c.degrees(), 0)}};
}

Json package_to_json(const InvariantPackage &p) {
  using P = InvariantPackage;
  return {{"schema", kSchemaVersion},
          {"spec", p.spec},
          {"grading", "HF-"},
          {"delta", rational_to_json(P::hf_minus(p.delta))},
          {"delta_bar", rational_to_json(P::hf_minus(p.delta_bar))},
          {"delta_under", rational_to_json(P::hf_minus(p.delta_under))},
          {"hfb", module_to_json(P::hf_minus(p.hfb))},
          {"conn", module_to_json(P::hf_minus(p.conn))},
          {"red_conn", torsion_to_json(P::hf_minus(p.red_conn))},
          {"omega", p.omega},
          {"det", p.det},
          {"signature", p.signature ? Json(*p.signature) : Json(nullptr)},
          {"d_normalized",
           {{"delta", rational_to_json(p.delta)},
            {"delta_bar", rational_to_json(p.delta_bar)},
            {"delta_under", rational_to_json(p.delta_under)}}}};
}

} // namespace hfb
