#pragma once
// Ext^1-quivers of the small reduced enveloping algebras: one node per
// isomorphism class of simple (or Verma-type) module, and an edge mu -> lambda
// of multiplicity dim Ext^1(node mu, node lambda). Quivers are computed by
// either engine (weight-space derivations or the full cocycle solver), or
// written down from the closed-form classification, and the two can be
// diffed edge-by-edge.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wq/der1.hpp"
#include "wq/ext1.hpp"
#include "wq/rep.hpp"
#include "wq/witt.hpp"

namespace wq {

// thrown when the two engines disagree on a pair (distinct from plain errors
// so the command line can report it with its own exit status)
struct engine_mismatch : error {
  using error::error;
};

enum class Engine { derivation, cocycle, both };

inline std::string engine_name(Engine e) {
  switch (e) {
    case Engine::derivation: return "derivation";
    case Engine::cocycle: return "cocycle";
    default: return "both";
  }
}

inline std::optional<Engine> parse_engine(const std::string& s) {
  if (s == "derivation" || s == "der") return Engine::derivation;
  if (s == "cocycle" || s == "coc") return Engine::cocycle;
  if (s == "both") return Engine::both;
  return std::nullopt;
}

enum class Family { verma, simple };

inline std::string family_name(Family f) { return f == Family::verma ? "verma" : "simple"; }

inline std::optional<Family> parse_family(const std::string& s) {
  if (s == "verma") return Family::verma;
  if (s == "simple") return Family::simple;
  return std::nullopt;
}

struct Quiver {
  uint32_t p = 0;
  int height = -1;
  std::vector<uint32_t> chi;  // p residues, values on e_{-1}, ..., e_{p-2}
  std::string family;
  std::string engine;  // "derivation" | "cocycle" | "both" | "closed-form"
  std::vector<std::string> nodes;
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> edges;  // nonzero multiplicities

  void add_edge(uint32_t from, uint32_t to, uint32_t mult) {
    if (from >= nodes.size() || to >= nodes.size()) throw error("Quiver: edge endpoint out of range");
    if (mult > 0) edges[{from, to}] = mult;
  }
  uint32_t mult(uint32_t from, uint32_t to) const {
    auto it = edges.find({from, to});
    return it == edges.end() ? 0u : it->second;
  }
  size_t edge_count() const {  // counted with multiplicity
    size_t n = 0;
    for (const auto& [k, m] : edges) n += m;
    return n;
  }

  bool operator==(const Quiver& o) const {
    return p == o.p && height == o.height && chi == o.chi && family == o.family &&
           engine == o.engine && nodes == o.nodes && edges == o.edges;
  }

  // connectivity of the underlying undirected graph
  bool is_connected() const {
    if (nodes.empty()) return true;
    std::vector<std::vector<uint32_t>> adj(nodes.size());
    for (const auto& [k, m] : edges) {
      if (m == 0) continue;
      adj[k.first].push_back(k.second);
      adj[k.second].push_back(k.first);
    }
    std::vector<bool> seen(nodes.size(), false);
    std::vector<uint32_t> stack{0};
    seen[0] = true;
    size_t reached = 1;
    while (!stack.empty()) {
      uint32_t v = stack.back();
      stack.pop_back();
      for (uint32_t u : adj[v])
        if (!seen[u]) {
          seen[u] = true;
          ++reached;
          stack.push_back(u);
        }
    }
    return reached == nodes.size();
  }

  // deterministic DOT: nodes in ascending order, one line per edge, a
  // multiplicity-m edge drawn as m parallel lines
  std::string to_dot() const {
    std::ostringstream os;
    os << "digraph ext1 {\n";
    for (const auto& n : nodes) os << "  " << n << ";\n";
    for (const auto& [k, m] : edges)
      for (uint32_t i = 0; i < m; ++i)
        os << "  " << nodes[k.first] << " -> " << nodes[k.second] << ";\n";
    os << "}\n";
    return os.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["height"] = height;
    j["chi"] = chi;
    j["family"] = family;
    j["engine"] = engine;
    j["nodes"] = nodes;
    nlohmann::json e = nlohmann::json::array();
    for (const auto& [k, m] : edges)
      e.push_back({{"from", k.first}, {"to", k.second}, {"mult", m}});
    j["edges"] = e;
    return j;
  }

  static Quiver from_json(const nlohmann::json& j) {
    Quiver q;
    q.p = j.at("p").get<uint32_t>();
    q.height = j.at("height").get<int>();
    q.chi = j.at("chi").get<std::vector<uint32_t>>();
    q.family = j.at("family").get<std::string>();
    q.engine = j.at("engine").get<std::string>();
    q.nodes = j.at("nodes").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges"))
      q.add_edge(e.at("from").get<uint32_t>(), e.at("to").get<uint32_t>(),
                 e.at("mult").get<uint32_t>());
    return q;
  }
};

inline std::string emit(const Quiver& q, const std::string& format) {
  if (format == "dot") return q.to_dot();
  if (format == "json") return q.to_json().dump(2) + "\n";
  throw error("emit: unknown format '" + format + "' (expected dot or json)");
}

// ---------------------------------------------------------------------------
// Edge-by-edge comparison. Requires identical node label lists; multiplicity
// mismatches are listed as (from, to, computed, expected).

struct QuiverDiff {
  struct Entry {
    uint32_t from, to, computed, expected;
  };
  std::vector<Entry> entries;
  bool empty() const { return entries.empty(); }
  std::string to_string(const Quiver& q) const {
    std::ostringstream os;
    for (const auto& e : entries)
      os << q.nodes[e.from] << " -> " << q.nodes[e.to] << ": computed " << e.computed
         << ", expected " << e.expected << "\n";
    return os.str();
  }
};

inline QuiverDiff diff_quivers(const Quiver& computed, const Quiver& expected) {
  if (computed.nodes != expected.nodes) throw error("diff_quivers: node sets differ");
  QuiverDiff d;
  uint32_t n = static_cast<uint32_t>(computed.nodes.size());
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) {
      uint32_t cm = computed.mult(a, b), em = expected.mult(a, b);
      if (cm != em) d.entries.push_back({a, b, cm, em});
    }
  return d;
}

// ---------------------------------------------------------------------------
// Closed-form quivers. The root condition 2x^2 - 10x + 3 = 0 governs the
// difference-6 edges for p >= 7.

inline std::vector<uint32_t> difference_six_roots(const GF& f) {
  return poly_roots({f.make(3), f.make(-10), f.make(2)}, f);
}

namespace detail {

inline std::vector<std::string> numeric_labels(uint32_t count) {
  std::vector<std::string> v;
  v.reserve(count);
  for (uint32_t i = 0; i < count; ++i) v.push_back(std::to_string(i));
  return v;
}

inline std::vector<uint32_t> chi_residues(const Character& chi, uint32_t p) {
  std::vector<uint32_t> v(p, 0);
  for (int i = -1; i <= static_cast<int>(p) - 2; ++i) v[static_cast<size_t>(i + 1)] = chi(i).val();
  return v;
}

inline bool quad_root(const std::vector<uint32_t>& roots, uint32_t lam) {
  for (uint32_t r : roots)
    if (r == lam) return true;
  return false;
}

}  // namespace detail

// Verma-to-Verma multiplicities at chi = 0 (closed form).
inline uint32_t expected_verma_mult(uint32_t p, const std::vector<uint32_t>& roots, uint32_t mu,
                                    uint32_t lam) {
  uint32_t d = (lam + p - mu) % p;
  if (p == 5) {
    if (d == 2 || d == 3) return 1;
    auto pair_in = [&](uint32_t a, uint32_t b) {
      return (mu == a && lam == b) || (mu == b && lam == a);
    };
    if (pair_in(0, 0) || pair_in(4, 4) || pair_in(0, 1) || pair_in(0, 4) || pair_in(3, 4)) return 1;
    return 0;
  }
  if (d == 2 || d == 3 || d == 4) return 1;
  const std::pair<uint32_t, uint32_t> listed[] = {
      {0, 0},     {p - 1, p - 1}, {p - 1, 0},     {0, p - 1},
      {0, 1},     {p - 2, p - 1}, {p - 5, 0},     {p - 1, 4}};
  for (auto [a, b] : listed)
    if (mu == a && lam == b) return 1;
  if (d == 6 && detail::quad_root(roots, lam)) return 1;
  return 0;
}

// Simple-to-simple multiplicities at chi = 0 (closed form).
inline uint32_t expected_simple_mult(uint32_t p, const std::vector<uint32_t>& roots, uint32_t mu,
                                     uint32_t lam) {
  if ((mu == 0 && lam == p - 1) || (mu == p - 1 && lam == 0)) return 2;
  uint32_t d = (lam + p - mu) % p;
  if (p == 5) {
    if ((d == 2 || d == 3) && 1 <= mu && mu <= p - 2 && 1 <= lam && lam <= p - 1) return 1;
    const std::pair<uint32_t, uint32_t> listed[] = {{0, 1}, {p - 2, 0}, {p - 1, 2}, {p - 1, 3}};
    for (auto [a, b] : listed)
      if (mu == a && lam == b) return 1;
    return 0;
  }
  if ((d == 2 || d == 3 || d == 4) && 1 <= mu && mu <= p - 2 && 1 <= lam && lam <= p - 1) return 1;
  const std::pair<uint32_t, uint32_t> listed[] = {
      {0, 1}, {p - 2, 0}, {p - 1, 2}, {p - 1, 3}, {p - 1, 4}};
  for (auto [a, b] : listed)
    if (mu == a && lam == b) return 1;
  if (d == 6 && detail::quad_root(roots, lam) && 1 <= mu && mu <= p - 2 && 1 <= lam &&
      lam <= p - 2)
    return 1;
  return 0;
}

// Height-0 multiplicities (closed form), nodes 0..p-2.
inline uint32_t expected_height0_mult(uint32_t p, const std::vector<uint32_t>& roots, uint32_t mu,
                                      uint32_t lam) {
  uint32_t d = (lam + p - mu) % p;
  if (p == 5) {
    if (d == 2 || d == 3) return 1;
    if ((mu == 0 && lam == 0) || (mu == 1 && lam == 0) || (mu == 0 && lam == 1)) return 1;
    return 0;
  }
  if (d == 2 || d == 3 || d == 4) return 1;
  if ((mu == 0 && lam == 0) || (mu == 0 && lam == 1) || (mu == p - 5 && lam == 0)) return 1;
  if (d == 6 && detail::quad_root(roots, lam)) return 1;
  return 0;
}

// The theorem-encoded quiver for a given height. Families verma/simple only
// differ at height -1; the p-1 case takes the centralizer classification and
// returns the single-node encoded statement.
inline Quiver expected_quiver(uint32_t p, int height, Family family = Family::simple,
                              std::optional<SubalgebraClass> cls = std::nullopt) {
  Witt w(p);
  GF f = w.f;
  std::vector<uint32_t> roots = difference_six_roots(f);
  Quiver q;
  q.p = p;
  q.height = height;
  q.engine = "closed-form";
  q.family = family_name(family);
  if (height == -1) {
    q.chi.assign(p, 0);
    q.nodes = detail::numeric_labels(p);
    for (uint32_t mu = 0; mu < p; ++mu)
      for (uint32_t lam = 0; lam < p; ++lam)
        q.add_edge(mu, lam,
                   family == Family::verma ? expected_verma_mult(p, roots, mu, lam)
                                           : expected_simple_mult(p, roots, mu, lam));
    return q;
  }
  if (height == 0) {
    q.family = "simple";
    q.chi = detail::chi_residues(Character::representative(f, 0), p);
    q.nodes = detail::numeric_labels(p - 1);
    for (uint32_t mu = 0; mu + 1 < p; ++mu)
      for (uint32_t lam = 0; lam + 1 < p; ++lam)
        q.add_edge(mu, lam, expected_height0_mult(p, roots, mu, lam));
    return q;
  }
  if (height == 1) {
    q.family = "simple";
    q.chi = detail::chi_residues(Character::representative(f, 1), p);
    q.nodes = detail::numeric_labels(p);
    for (uint32_t mu = 0; mu < p; ++mu)
      for (uint32_t lam = 0; lam < p; ++lam) {
        uint32_t d = (lam + p - mu) % p;
        bool edge = (p == 5) ? (d == 2 || d == 3) : (d == 2 || d == 3 || d == 4);
        q.add_edge(mu, lam, edge ? 1 : 0);
      }
    return q;
  }
  if (height == static_cast<int>(p) - 1) {
    if (!cls) throw error("expected_quiver: height p-1 needs the centralizer classification");
    q.family = "simple";
    q.chi = detail::chi_residues(Character::representative(f, static_cast<int>(p) - 1), p);
    q.nodes = {"L"};
    switch (*cls) {
      case SubalgebraClass::torus:
        break;  // semisimple algebra: no extensions anywhere
      case SubalgebraClass::p_nilpotent:
        q.add_edge(0, 0, 1);  // the one non-semisimple block carries a single loop
        break;
      default:
        throw error("expected_quiver: no closed-form statement for a mixed centralizer");
    }
    return q;
  }
  throw error("expected_quiver: no closed-form quiver at height " + std::to_string(height));
}

// ---------------------------------------------------------------------------
// Computed quivers.

namespace detail {

// One ordered pair evaluated by the engines the caller filled in.
inline uint32_t resolve_edge(std::optional<uint32_t> der, std::optional<uint32_t> coc, Engine eng,
                             const Quiver& q, uint32_t mu, uint32_t lam) {
  if (eng == Engine::both && der && coc && *der != *coc)
    throw engine_mismatch("engines disagree on " + q.nodes[mu] + " -> " + q.nodes[lam] +
                          ": derivation " + std::to_string(*der) + ", cocycle " +
                          std::to_string(*coc));
  if (eng == Engine::derivation && der) return *der;
  if (coc) return *coc;
  if (der) return *der;
  throw error("no engine evaluated " + q.nodes[mu] + " -> " + q.nodes[lam]);
}

// Ext from L(mu) into L(lam) by the weight-space method, when reachable: for
// interior mu the source is a Verma module; for boundary mu the pair is
// dualized first; the two diagonal corner pairs embed into a Verma-source
// group, which settles them when that bound vanishes.
inline std::optional<uint32_t> simple_ext_derivation(const std::vector<Rep<Fp>>& simples,
                                                     uint32_t p, uint32_t mu, uint32_t lam) {
  const GF& f = simples[0].f;
  auto dual_label = [&](uint32_t x) { return (x == 0 || x == p - 1) ? x : p - 1 - x; };
  if (1 <= mu && mu <= p - 2) return restricted_h1(simples[lam], f.make(mu));
  uint32_t ls = dual_label(lam);
  if (1 <= ls && ls <= p - 2)
    return restricted_h1(simples[mu].dual(), f.make(ls));
  if (mu == lam) {
    // embeds into Ext from the Verma cover of L(mu), conclusive when zero
    uint32_t bound = restricted_h1(simples[lam], f.make(mu == 0 ? 0 : int64_t(p) - 1));
    if (bound == 0) return 0;
  }
  return std::nullopt;
}

}  // namespace detail

// Ext^1-quiver of the p Verma modules at chi = 0.
inline Quiver verma_quiver(uint32_t p, Engine eng) {
  Witt w(p);
  GF f = w.f;
  Quiver q;
  q.p = p;
  q.height = -1;
  q.chi.assign(p, 0);
  q.family = "verma";
  q.engine = engine_name(eng);
  q.nodes = detail::numeric_labels(p);
  std::vector<Rep<Fp>> vermas;
  for (uint32_t lam = 0; lam < p; ++lam) vermas.push_back(verma(w, f.make(lam)));
  for (uint32_t mu = 0; mu < p; ++mu)
    for (uint32_t lam = 0; lam < p; ++lam) {
      std::optional<uint32_t> der, coc;
      if (eng != Engine::cocycle) der = restricted_h1(vermas[lam], f.make(mu));
      if (eng != Engine::derivation) coc = ext1(vermas[mu], vermas[lam]).dim;
      q.add_edge(mu, lam, detail::resolve_edge(der, coc, eng, q, mu, lam));
    }
  return q;
}

// Ext^1-quiver of the p simple restricted modules at chi = 0. The two corner
// pairs {0, p-1} and any unresolved diagonal corner are outside the
// weight-space method's reach and always go through the cocycle solver.
inline Quiver simple_quiver(uint32_t p, Engine eng) {
  Witt w(p);
  GF f = w.f;
  Quiver q;
  q.p = p;
  q.height = -1;
  q.chi.assign(p, 0);
  q.family = "simple";
  q.engine = engine_name(eng);
  q.nodes = detail::numeric_labels(p);
  std::vector<Rep<Fp>> simples;
  for (uint32_t lam = 0; lam < p; ++lam) simples.push_back(simple_restricted(w, f.make(lam)));
  for (uint32_t mu = 0; mu < p; ++mu)
    for (uint32_t lam = 0; lam < p; ++lam) {
      std::optional<uint32_t> der, coc;
      if (eng != Engine::cocycle) der = detail::simple_ext_derivation(simples, p, mu, lam);
      if (eng != Engine::derivation || !der) coc = ext1(simples[mu], simples[lam]).dim;
      q.add_edge(mu, lam, detail::resolve_edge(der, coc, eng, q, mu, lam));
    }
  return q;
}

// Ext^1-quiver of the p-1 simple modules at height 0 (all of them induced,
// so the weight-space method reaches every pair).
inline Quiver height0_quiver(uint32_t p, Engine eng) {
  Witt w(p);
  GF f = w.f;
  Quiver q;
  q.p = p;
  q.height = 0;
  q.chi = detail::chi_residues(Character::representative(f, 0), p);
  q.family = "simple";
  q.engine = engine_name(eng);
  q.nodes = detail::numeric_labels(p - 1);
  std::vector<Rep<Fp>> simples;
  for (uint32_t lam = 0; lam + 1 < p; ++lam) simples.push_back(height0_simple(w, f.make(lam)));
  for (uint32_t mu = 0; mu + 1 < p; ++mu)
    for (uint32_t lam = 0; lam + 1 < p; ++lam) {
      std::optional<uint32_t> der, coc;
      if (eng != Engine::cocycle) der = restricted_h1(simples[lam], f.make(mu));
      if (eng != Engine::derivation) coc = ext1(simples[mu], simples[lam]).dim;
      q.add_edge(mu, lam, detail::resolve_edge(der, coc, eng, q, mu, lam));
    }
  return q;
}

// Ext^1-quiver of the p simple modules at height 1, solved over the
// Artin-Schreier extension; node labels are the F_p parts of the weights.
inline Quiver height1_quiver(uint32_t p, Engine eng) {
  Witt w(p);
  GFExt e(p);
  GF f = w.f;
  Quiver q;
  q.p = p;
  q.height = 1;
  q.chi = detail::chi_residues(Character::representative(f, 1), p);
  q.family = "simple";
  q.engine = engine_name(eng);
  q.nodes = detail::numeric_labels(p);
  std::vector<Rep<Fq>> simples;
  for (uint32_t lam = 0; lam < p; ++lam) simples.push_back(height1_simple(e, w, f.make(lam)));
  for (uint32_t mu = 0; mu < p; ++mu)
    for (uint32_t lam = 0; lam < p; ++lam) {
      std::optional<uint32_t> der, coc;
      if (eng != Engine::cocycle) der = restricted_h1(simples[lam], e.xi() + e.make(mu));
      if (eng != Engine::derivation) coc = ext1(simples[mu], simples[lam]).dim;
      q.add_edge(mu, lam, detail::resolve_edge(der, coc, eng, q, mu, lam));
    }
  return q;
}

// Dispatch on the height of chi for the multi-node families. Heights between
// 2 and p-2 carry a single-node quiver produced by the mid-height analyzer,
// which lives in its own header.
inline Quiver build_quiver(uint32_t p, const Character& chi, Family family, Engine eng) {
  int r = chi.height();
  if (r == -1) return family == Family::verma ? verma_quiver(p, eng) : simple_quiver(p, eng);
  if (r == 0) return height0_quiver(p, eng);
  if (r == 1) return height1_quiver(p, eng);
  throw error("build_quiver: height " + std::to_string(r) +
              " characters are handled by the mid-height and top-height analyzers");
}

}  // namespace wq
