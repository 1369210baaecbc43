#pragma once
// The restricted simple Lie algebra W = Der k[t]/(t^p) in characteristic
// p >= 5: basis e_{-1}, ..., e_{p-2} with [e_i, e_j] = (j - i) e_{i+j}
// (zero when i+j is out of range) and p-th power map e_i^{[p]} = d_{i,0} e_0.
// Vectors are stored in slots 0..p-1 where slot s holds the e_{s-1}
// coefficient; all public index parameters use the graded index i itself.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wq/gf.hpp"
#include "wq/linalg.hpp"

namespace wq {

struct Witt {
  GF f;
  uint32_t p;

  explicit Witt(uint32_t p_) : f(p_), p(p_) {
    if (p_ < 5) throw error("Witt: need p >= 5");
  }

  bool in_range(int i) const { return i >= -1 && i <= static_cast<int>(p) - 2; }
  size_t slot(int i) const {
    if (!in_range(i)) throw error("Witt: basis index out of range");
    return static_cast<size_t>(i + 1);
  }
  int index_of_slot(size_t s) const { return static_cast<int>(s) - 1; }

  // coefficient c with [e_i, e_j] = c * e_{i+j}; zero when e_{i+j} does not exist
  int64_t bracket_coeff(int i, int j) const {
    if (!in_range(i) || !in_range(j)) throw error("Witt: basis index out of range");
    return in_range(i + j) ? (j - i) : 0;
  }
};

// [x, y] for coordinate vectors over any scalar K containing F_p.
template <class K>
std::vector<K> bracket_vec(const typename K::Ctx& c, const Witt& w, const std::vector<K>& x,
                           const std::vector<K>& y) {
  if (x.size() != w.p || y.size() != w.p) throw error("bracket_vec: bad vector size");
  std::vector<K> r(w.p, c.zero());
  for (int i = -1; i <= static_cast<int>(w.p) - 2; ++i) {
    if (x[w.slot(i)].is_zero()) continue;
    for (int j = -1; j <= static_cast<int>(w.p) - 2; ++j) {
      if (y[w.slot(j)].is_zero()) continue;
      int64_t cc = w.bracket_coeff(i, j);
      if (cc == 0) continue;
      r[w.slot(i + j)] += x[w.slot(i)] * y[w.slot(j)] * c.make(cc);
    }
  }
  return r;
}

// Matrix of ad(x) acting on coordinate vectors: ad(x) y = [x, y].
template <class K>
Matrix<K> ad_matrix(const typename K::Ctx& c, const Witt& w, const std::vector<K>& x) {
  Matrix<K> m(c, w.p, w.p);
  for (size_t s = 0; s < w.p; ++s) {
    std::vector<K> ej(w.p, c.zero());
    ej[s] = c.one();
    std::vector<K> col = bracket_vec(c, w, x, ej);
    for (size_t r = 0; r < w.p; ++r) m.at(r, s) = col[r];
  }
  return m;
}

// x^{[p]}, recovered from ad(x^{[p]}) = ad(x)^p; ad is injective and every
// derivation of W is inner, so the linear system below is uniquely solvable.
template <class K>
std::vector<K> p_power(const typename K::Ctx& c, const Witt& w, const std::vector<K>& x) {
  Matrix<K> target = ad_matrix(c, w, x).pow(w.p);
  // unknown y with ad(y) = target: p^2 equations, p unknowns
  Matrix<K> sys(c, w.p * w.p, w.p);
  for (size_t s = 0; s < w.p; ++s) {
    std::vector<K> es(w.p, c.zero());
    es[s] = c.one();
    Matrix<K> ads = ad_matrix(c, w, es);
    for (size_t a = 0; a < w.p; ++a)
      for (size_t b = 0; b < w.p; ++b) sys.at(a * w.p + b, s) = ads.at(a, b);
  }
  std::vector<K> rhs(w.p * w.p, c.zero());
  for (size_t a = 0; a < w.p; ++a)
    for (size_t b = 0; b < w.p; ++b) rhs[a * w.p + b] = target.at(a, b);
  auto sol = solve(sys, rhs);
  if (!sol) throw error("p_power: ad(x)^p is not inner (unexpected)");
  return *sol;
}

// ---------------------------------------------------------------------------
// Linear characters chi in g^* and their height.

struct Character {
  GF f;
  std::vector<Fp> vals;  // slot s holds chi(e_{s-1})

  explicit Character(const GF& f_) : f(f_), vals(f_.p, f_.zero()) {}

  uint32_t p() const { return f.p; }
  Fp operator()(int i) const {
    if (i < -1 || i > static_cast<int>(f.p) - 2) throw error("Character: index out of range");
    return vals[static_cast<size_t>(i + 1)];
  }
  void set(int i, Fp v) {
    if (i < -1 || i > static_cast<int>(f.p) - 2) throw error("Character: index out of range");
    vals[static_cast<size_t>(i + 1)] = v;
  }

  bool is_zero() const {
    for (const auto& v : vals)
      if (!v.is_zero()) return false;
    return true;
  }

  // Least r with chi vanishing on e_r, e_{r+1}, ...; -1 for chi = 0 and
  // p-1 when chi(e_{p-2}) != 0.
  int height() const {
    int top = -2;
    for (int i = -1; i <= static_cast<int>(f.p) - 2; ++i)
      if (!(*this)(i).is_zero()) top = i;
    return top + 1;
  }

  Character negate() const {
    Character r(f);
    for (size_t s = 0; s < vals.size(); ++s) r.vals[s] = -vals[s];
    return r;
  }

  bool operator==(const Character& o) const { return f == o.f && vals == o.vals; }

  // Canonical representative of the coadjoint class studied at each height:
  // r = 0 uses chi(e_{-1}) = 1, r = 1 uses chi(e_0) = 1, and even heights
  // 2 <= r <= p-3 together with r = p-1 use chi(e_{r-1}) = 1. Odd heights
  // strictly between 1 and p-1 have no canonical pick here; pass chi yourself.
  static Character representative(const GF& f, int r) {
    Character c(f);
    if (r == -1) return c;
    if (r == 0) {
      c.set(-1, f.one());
      return c;
    }
    if (r == 1) {
      c.set(0, f.one());
      return c;
    }
    int pm1 = static_cast<int>(f.p) - 1;
    if (r == pm1 || (r % 2 == 0 && r >= 2 && r <= pm1 - 2)) {
      c.set(r - 1, f.one());
      return c;
    }
    throw error("Character: no canonical representative at odd mid height " + std::to_string(r));
  }

  nlohmann::json to_json() const {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : vals) a.push_back(v.val());
    return a;
  }

  // Array of p residues, listed for e_{-1}, e_0, ..., e_{p-2}.
  static Character from_json(const GF& f, const nlohmann::json& j) {
    if (!j.is_array() || j.size() != f.p)
      throw error("Character: expected an array of exactly p residues");
    Character c(f);
    for (size_t s = 0; s < f.p; ++s) {
      if (!j[s].is_number_integer()) throw error("Character: entries must be integers");
      c.vals[s] = f.make(j[s].get<int64_t>());
    }
    return c;
  }
};

// Gram matrix of the form (x, y) -> chi([x, y]) on the span of e_{lo}..e_{hi}.
inline Matrix<Fp> gram_matrix(const Witt& w, const Character& chi, int lo, int hi) {
  if (lo < -1 || hi > static_cast<int>(w.p) - 2 || lo > hi) throw error("gram_matrix: bad range");
  size_t n = static_cast<size_t>(hi - lo + 1);
  Matrix<Fp> g(w.f, n, n);
  for (int i = lo; i <= hi; ++i)
    for (int j = lo; j <= hi; ++j) {
      int64_t c = w.bracket_coeff(i, j);
      if (c != 0) g.at(i - lo, j - lo) = chi(i + j) * w.f.make(c);
    }
  return g;
}

// Radical of chi([.,.]) restricted to span{e_lo..e_hi}, embedded in full
// p-dimensional coordinates.
inline std::vector<std::vector<Fp>> form_radical(const Witt& w, const Character& chi, int lo,
                                                 int hi) {
  Matrix<Fp> g = gram_matrix(w, chi, lo, hi);
  std::vector<std::vector<Fp>> out;
  for (const auto& k : kernel_basis(g)) {
    std::vector<Fp> v(w.p, w.f.zero());
    for (int i = lo; i <= hi; ++i) v[w.slot(i)] = k[i - lo];
    out.push_back(std::move(v));
  }
  return out;
}

// Centralizer g^chi = {x : chi([x, g]) = 0}, the radical over the whole algebra.
inline std::vector<std::vector<Fp>> centralizer(const Witt& w, const Character& chi) {
  return form_radical(w, chi, -1, static_cast<int>(w.p) - 2);
}

// ---------------------------------------------------------------------------
// Structure of a restricted subalgebra: torus, p-nilpotent, or mixed.

enum class SubalgebraClass { torus, p_nilpotent, mixed };

inline const char* to_string(SubalgebraClass c) {
  switch (c) {
    case SubalgebraClass::torus: return "torus";
    case SubalgebraClass::p_nilpotent: return "p-nilpotent";
    case SubalgebraClass::mixed: return "mixed";
  }
  return "?";
}

struct SubalgebraReport {
  SubalgebraClass cls;
  bool bracket_closed;
  bool p_closed;
  bool abelian;
  std::string detail;
};

// Classify span(basis) as a restricted subalgebra of W. Torus: abelian with
// every basis element in the span of its own iterated p-th powers.
// p-nilpotent: nilpotent Lie algebra whose basis elements have vanishing
// iterated p-th powers (Engel then lifts this to every element).
inline SubalgebraReport classify_restricted(const Witt& w,
                                            const std::vector<std::vector<Fp>>& basis) {
  SubalgebraReport rep{SubalgebraClass::mixed, true, true, true, ""};
  const GF& f = w.f;
  auto inside = [&](const std::vector<Fp>& v) { return in_span<Fp>(f, basis, v); };

  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = a + 1; b < basis.size(); ++b) {
      std::vector<Fp> br = bracket_vec<Fp>(f, w, basis[a], basis[b]);
      bool zero = true;
      for (const auto& x : br)
        if (!x.is_zero()) zero = false;
      if (!zero) rep.abelian = false;
      if (!inside(br)) rep.bracket_closed = false;
    }
  if (!rep.bracket_closed) {
    rep.detail = "not closed under the bracket";
    return rep;
  }

  std::vector<std::vector<std::vector<Fp>>> iterates;  // per basis element
  for (const auto& x : basis) {
    std::vector<std::vector<Fp>> it;
    std::vector<Fp> cur = x;
    for (size_t step = 0; step <= basis.size() + 1; ++step) {
      cur = p_power<Fp>(f, w, cur);
      if (!inside(cur)) {
        rep.p_closed = false;
        break;
      }
      it.push_back(cur);
      bool zero = true;
      for (const auto& v : cur)
        if (!v.is_zero()) zero = false;
      if (zero) break;
    }
    iterates.push_back(std::move(it));
  }
  if (!rep.p_closed) {
    rep.detail = "not closed under the p-th power map";
    return rep;
  }

  bool all_nil = true, all_toral = true;
  for (size_t k = 0; k < basis.size(); ++k) {
    const auto& it = iterates[k];
    bool terminates_at_zero = !it.empty();
    if (!it.empty()) {
      const auto& last = it.back();
      for (const auto& v : last)
        if (!v.is_zero()) terminates_at_zero = false;
    }
    if (!terminates_at_zero) all_nil = false;
    if (!in_span<Fp>(f, it, basis[k])) all_toral = false;
  }

  if (rep.abelian && all_toral) {
    rep.cls = SubalgebraClass::torus;
    rep.detail = "abelian; every basis element lies in the span of its p-th power iterates";
    return rep;
  }
  if (all_nil) {
    bool lie_nilpotent = rep.abelian;
    if (!lie_nilpotent) {
      // lower central series within the span
      std::vector<std::vector<Fp>> term = basis;
      for (size_t step = 0; step < w.p + 1 && !term.empty(); ++step) {
        std::vector<std::vector<Fp>> next;
        for (const auto& x : basis)
          for (const auto& y : term) {
            std::vector<Fp> br = bracket_vec<Fp>(f, w, x, y);
            bool zero = true;
            for (const auto& v : br)
              if (!v.is_zero()) zero = false;
            if (!zero) next.push_back(std::move(br));
          }
        if (next.empty()) {
          lie_nilpotent = true;
          break;
        }
        if (span_rank<Fp>(f, next) >= span_rank<Fp>(f, term)) break;  // stabilized, not nilpotent
        term = std::move(next);
      }
    }
    if (lie_nilpotent) {
      rep.cls = SubalgebraClass::p_nilpotent;
      rep.detail = "nilpotent; every basis element has vanishing iterated p-th powers";
      return rep;
    }
  }
  rep.cls = SubalgebraClass::mixed;
  rep.detail = "neither toral nor p-nilpotent";
  return rep;
}

}  // namespace wq
