#pragma once
// Modules over the reduced enveloping algebras u(g, chi) for g the Witt
// algebra or one of its graded subalgebras g_t = span{e_t, ..., e_{p-2}}.
// A Rep stores one matrix per acting basis element e_lo, ..., e_{p-2};
// the scalar K is F_p or its degree-p extension.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wq/gf.hpp"
#include "wq/linalg.hpp"
#include "wq/witt.hpp"

namespace wq {

inline nlohmann::json scalar_to_json(const Fp& x) { return x.val(); }
inline nlohmann::json scalar_to_json(const Fq& x) {
  nlohmann::json a = nlohmann::json::array();
  for (uint32_t c : x.coeffs()) a.push_back(c);
  return a;
}

template <class K>
struct Rep {
  using Ctx = typename K::Ctx;
  Ctx f;            // scalar context
  uint32_t p;
  int lo;           // lowest acting index: -1 for g, 0 for b+, t for g_t
  Character chi;    // the character of the reduced enveloping algebra
  uint32_t dim;
  std::vector<Matrix<K>> mats;  // mats[i - lo] is the action of e_i
  std::string name;

  Rep(Ctx f_, uint32_t p_, int lo_, Character chi_, uint32_t dim_, std::string name_)
      : f(f_), p(p_), lo(lo_), chi(std::move(chi_)), dim(dim_), name(std::move(name_)) {
    if (lo < -1 || lo > static_cast<int>(p) - 2) throw error("Rep: bad acting range");
    mats.assign(static_cast<size_t>(static_cast<int>(p) - 1 - lo), Matrix<K>(f, dim, dim));
  }

  int hi() const { return static_cast<int>(p) - 2; }
  Matrix<K>& rho(int i) {
    if (i < lo || i > hi()) throw error("Rep: generator index out of range");
    return mats[static_cast<size_t>(i - lo)];
  }
  const Matrix<K>& rho(int i) const {
    if (i < lo || i > hi()) throw error("Rep: generator index out of range");
    return mats[static_cast<size_t>(i - lo)];
  }

  // chi(e_i)^p as a scalar of K (Frobenius fixes the prime field).
  K chi_p(int i) const {
    Fp c = (i >= -1 && i <= hi()) ? chi(i) : chi.f.zero();
    if constexpr (std::is_same_v<K, Fp>)
      return c;
    else
      return f.embed(c);
  }

  // rho respects brackets and the p-th power rule of u(g, chi).
  void validate() const {
    Witt w(p);
    for (int i = lo; i <= hi(); ++i)
      for (int j = i + 1; j <= hi(); ++j) {
        Matrix<K> lhs = rho(i) * rho(j) - rho(j) * rho(i);
        Matrix<K> rhs(f, dim, dim);
        int64_t c = w.bracket_coeff(i, j);
        if (c != 0) rhs = rho(i + j) * f.make(c);
        if (lhs != rhs)
          throw error(name + ": bracket relation fails at (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
      }
    for (int i = lo; i <= hi(); ++i) {
      Matrix<K> lhs = rho(i).pow(p);
      if (i == 0) lhs = lhs - rho(0);  // e_0^{[p]} = e_0
      K c = chi_p(i);
      if (!c.is_zero()) lhs = lhs - Matrix<K>::identity(f, dim) * c;
      if (!lhs.is_zero())
        throw error(name + ": p-th power relation fails at e_" + std::to_string(i));
    }
  }

  // Diagonal of rho(e_0) when it is literally diagonal, else nullopt.
  std::optional<std::vector<K>> weights() const {
    if (lo > 0) return std::nullopt;
    const Matrix<K>& m = rho(0);
    for (size_t a = 0; a < dim; ++a)
      for (size_t b = 0; b < dim; ++b)
        if (a != b && !m.at(a, b).is_zero()) return std::nullopt;
    std::vector<K> wt;
    wt.reserve(dim);
    for (size_t a = 0; a < dim; ++a) wt.push_back(m.at(a, a));
    return wt;
  }

  // Indices of basis vectors grouped by e_0-weight, in first-seen order.
  std::vector<std::pair<K, std::vector<size_t>>> weight_spaces() const {
    auto wt = weights();
    if (!wt) throw error(name + ": rho(e_0) is not diagonal");
    std::vector<std::pair<K, std::vector<size_t>>> out;
    for (size_t a = 0; a < dim; ++a) {
      bool found = false;
      for (auto& [v, idxs] : out)
        if (v == (*wt)[a]) {
          idxs.push_back(a);
          found = true;
        }
      if (!found) out.push_back({(*wt)[a], {a}});
    }
    return out;
  }

  Rep dual() const {
    Rep r(f, p, lo, chi.negate(), dim, name + "^*");
    for (int i = lo; i <= hi(); ++i) r.rho(i) = -rho(i).transpose();
    return r;
  }

  // Add theta(e_i) * Id to each rho(e_i); theta must kill [g, g] for the
  // result to satisfy the bracket relations.
  Rep twist(const std::vector<std::pair<int, K>>& theta, Character new_chi,
            const std::string& new_name) const {
    Rep r(f, p, lo, std::move(new_chi), dim, new_name);
    for (int i = lo; i <= hi(); ++i) r.rho(i) = rho(i);
    for (const auto& [i, v] : theta) r.rho(i) = r.rho(i) + Matrix<K>::identity(f, dim) * v;
    return r;
  }

  Rep restrict_to(int new_lo) const {
    if (new_lo < lo) throw error("restrict_to: cannot enlarge the acting algebra");
    Rep r(f, p, new_lo, chi, dim, name);
    for (int i = new_lo; i <= hi(); ++i) r.rho(i) = rho(i);
    return r;
  }

  // Basis change: new action P^{-1} rho P (columns of P are the new basis).
  Rep conjugate(const Matrix<K>& pmat, const std::string& new_name) const {
    auto pin = inverse(pmat);
    if (!pin) throw error("conjugate: singular basis change");
    Rep r(f, p, lo, chi, dim, new_name);
    for (int i = lo; i <= hi(); ++i) r.rho(i) = *pin * rho(i) * pmat;
    return r;
  }

  // Simplicity for modules whose e_0-action is diagonal with distinct
  // eigenvalues: submodules are spanned by subsets of the eigenbasis, so the
  // module is simple iff the coefficient digraph is strongly connected.
  // Returns nullopt when that hypothesis fails.
  std::optional<bool> is_simple_weight_multfree() const {
    auto wt = weights();
    if (!wt) return std::nullopt;
    for (size_t a = 0; a < dim; ++a)
      for (size_t b = a + 1; b < dim; ++b)
        if ((*wt)[a] == (*wt)[b]) return std::nullopt;
    for (size_t start = 0; start < dim; ++start) {
      std::vector<bool> seen(dim, false);
      seen[start] = true;
      std::vector<size_t> stack{start};
      size_t count = 1;
      while (!stack.empty()) {
        size_t v = stack.back();
        stack.pop_back();
        for (int i = lo; i <= hi(); ++i)
          for (size_t u = 0; u < dim; ++u)
            if (!seen[u] && !rho(i).at(u, v).is_zero()) {
              seen[u] = true;
              ++count;
              stack.push_back(u);
            }
      }
      if (count != dim) return false;
    }
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["p"] = p;
    j["dim"] = dim;
    j["lowest_generator"] = lo;
    j["chi"] = chi.to_json();
    nlohmann::json ms = nlohmann::json::object();
    for (int i = lo; i <= hi(); ++i) {
      nlohmann::json rows = nlohmann::json::array();
      for (size_t a = 0; a < dim; ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t b = 0; b < dim; ++b) row.push_back(scalar_to_json(rho(i).at(a, b)));
        rows.push_back(std::move(row));
      }
      ms["e_" + std::to_string(i)] = std::move(rows);
    }
    j["matrices"] = std::move(ms);
    auto wt = weights();
    if (wt) {
      nlohmann::json ws = nlohmann::json::array();
      for (const auto& v : *wt) ws.push_back(scalar_to_json(v));
      j["weights"] = std::move(ws);
    }
    return j;
  }
};

// ---------------------------------------------------------------------------
// Verma module Z(lambda): dimension p, basis m_0..m_{p-1}, highest weight
// vector m_{p-1}, and e_k . m_j = (j + k + 1 + (k+1) lambda) m_{j+k} for every
// generator (zero when j+k falls outside 0..p-1). Restricted case chi = 0.

inline Rep<Fp> verma(const Witt& w, Fp lambda) {
  const GF& f = w.f;
  Rep<Fp> r(f, w.p, -1, Character(f), w.p, "Z(" + std::to_string(lambda.val()) + ")");
  for (int k = -1; k <= r.hi(); ++k)
    for (int j = 0; j < static_cast<int>(w.p); ++j) {
      int t = j + k;
      if (t < 0 || t >= static_cast<int>(w.p)) continue;
      Fp c = f.make(j + k + 1) + f.make(k + 1) * lambda;
      r.rho(k).at(static_cast<size_t>(t), static_cast<size_t>(j)) = c;
    }
  return r;
}

// ---------------------------------------------------------------------------
// Induction u(g_a, chi) (x)_{u(g_t, chi)} k_psi for nested graded subalgebras
// g_t  (subset) g_a, along a one-dimensional g_t-module psi. The module basis
// is the set of ordered monomials e_{t-1}^{c_1} ... e_a^{c_m} (x) 1 with all
// exponents below p; straightening uses [e_i, e_j] = (j-i) e_{i+j} and the
// reduction e_i^p = e_i^{[p]} + chi(e_i)^p inside u(g, chi).

template <class K>
class Induction {
 public:
  using Ctx = typename K::Ctx;
  using SparseVec = std::map<uint32_t, K>;  // monomial index -> coefficient

  Induction(Ctx f, const Witt& w, int act_lo, int sub_lo, std::map<int, K> psi, Character chi)
      : f_(f), w_(w), act_lo_(act_lo), sub_lo_(sub_lo), psi_(std::move(psi)), chi_(chi) {
    if (act_lo < -1 || sub_lo <= act_lo || sub_lo > static_cast<int>(w.p) - 2)
      throw error("Induction: bad subalgebra range");
    ngen_ = static_cast<size_t>(sub_lo - act_lo);
    dim_ = 1;
    for (size_t k = 0; k < ngen_; ++k) {
      if (dim_ > (1u << 30) / w.p) throw error("Induction: module too large");
      dim_ *= w.p;
    }
    check_psi();
  }

  uint32_t dim() const { return dim_; }

  // position k holds generator e_{sub_lo-1-k}; index = sum exps[k] p^k
  int gen_of_pos(size_t k) const { return sub_lo_ - 1 - static_cast<int>(k); }
  size_t pos_of_gen(int i) const { return static_cast<size_t>(sub_lo_ - 1 - i); }

  Rep<K> build(Character module_chi, const std::string& name) {
    Rep<K> r(f_, w_.p, act_lo_, std::move(module_chi), dim_, name);
    for (int i = act_lo_; i <= r.hi(); ++i) {
      for (uint32_t m = 0; m < dim_; ++m) {
        SparseVec col = act(i, m);
        for (const auto& [row, v] : col) r.rho(i).at(row, m) = v;
      }
    }
    return r;
  }

  // Action of e_i on the basis monomial with the given mixed-radix index.
  SparseVec act(int i, uint32_t mono) {
    uint64_t key = (static_cast<uint64_t>(i + 1) << 32) | mono;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    SparseVec out = act_uncached(i, mono);
    memo_.emplace(key, out);
    return out;
  }

 private:
  Ctx f_;
  Witt w_;
  int act_lo_, sub_lo_;
  std::map<int, K> psi_;
  Character chi_;
  size_t ngen_ = 0;
  uint32_t dim_ = 0;
  std::unordered_map<uint64_t, SparseVec> memo_;

  K psi_of(int i) const {
    auto it = psi_.find(i);
    return it == psi_.end() ? f_.zero() : it->second;
  }
  K chi_p(int i) const {
    Fp c = chi_(i);
    if constexpr (std::is_same_v<K, Fp>)
      return c;
    else
      return f_.embed(c);
  }

  // psi must kill [g_t, g_t] and satisfy psi(e_i)^p - psi(e_i^{[p]}) = chi(e_i)^p.
  void check_psi() const {
    for (int k = 2 * sub_lo_ + 1; k <= static_cast<int>(w_.p) - 2; ++k)
      if (k >= sub_lo_ && !psi_of(k).is_zero())
        throw error("Induction: psi does not kill the derived subalgebra");
    for (int i = sub_lo_; i <= static_cast<int>(w_.p) - 2; ++i) {
      K lhs = psi_of(i).pow(w_.p);
      if (i == 0) lhs -= psi_of(0);
      if (lhs != chi_p(i))
        throw error("Induction: psi is not a u(g_t, chi)-module at e_" + std::to_string(i));
    }
  }

  static void add_scaled(SparseVec& acc, const SparseVec& v, const K& c) {
    if (c.is_zero()) return;
    for (const auto& [m, x] : v) {
      auto [it, fresh] = acc.try_emplace(m, c * x);
      if (!fresh) {
        it->second += c * x;
        if (it->second.is_zero()) acc.erase(it);
      } else if (it->second.is_zero()) {
        acc.erase(it);
      }
    }
  }

  uint32_t digit(uint32_t mono, size_t k) const {
    uint32_t d = mono;
    for (size_t s = 0; s < k; ++s) d /= w_.p;
    return d % w_.p;
  }

  SparseVec act_uncached(int i, uint32_t mono) {
    SparseVec out;
    if (mono == 0) {
      if (i >= sub_lo_) {
        K v = psi_of(i);
        if (!v.is_zero()) out.emplace(0u, v);
      } else {
        out.emplace(pow_step(pos_of_gen(i)), f_.one());
      }
      return out;
    }
    // leading position: lowest k with nonzero digit holds the leftmost
    // (highest-index) generator present
    size_t j = 0;
    while (digit(mono, j) == 0) ++j;
    int g = gen_of_pos(j);

    if (i < sub_lo_ && pos_of_gen(i) <= j) {
      size_t k = pos_of_gen(i);
      uint32_t d = digit(mono, k);
      if (d + 1 < w_.p) {
        out.emplace(mono + pow_step(k), f_.one());
        return out;
      }
      // e_i^p (rest) = e_i^{[p]} (rest) + chi(e_i)^p (rest)
      uint32_t rest = mono - d * pow_step(k);
      if (i == 0) add_scaled(out, act(0, rest), f_.one());
      K c = chi_p(i);
      if (!c.is_zero()) add_scaled(out, SparseVec{{rest, f_.one()}}, c);
      return out;
    }

    // move e_i past one copy of e_g: e_i e_g = e_g e_i + (g - i) e_{i+g}
    uint32_t peeled = mono - pow_step(j);
    SparseVec inner = act(i, peeled);
    for (const auto& [m, c] : inner) add_scaled(out, act(g, m), c);
    if (w_.in_range(i + g)) {
      int64_t cc = w_.bracket_coeff(i, g);
      if (cc != 0) add_scaled(out, act(i + g, peeled), f_.make(cc));
    }
    return out;
  }

  uint32_t pow_step(size_t k) const {
    uint32_t s = 1;
    for (size_t t = 0; t < k; ++t) s *= w_.p;
    return s;
  }
};

// ---------------------------------------------------------------------------
// Induction from b+ = g_0 along psi(e_0) = lambda, re-based so that the
// matrices obey the Verma coefficient rule: the basis is
// n_j = -(j!) e_{-1}^{p-1-j} (x) 1, giving e_{-1} . n_j = j n_{j-1} for j >= 1
// while e_{-1} . n_0 depends on chi(e_{-1}).

template <class K>
Rep<K> induce_from_b(const typename K::Ctx& f, const Witt& w, K lambda, const Character& chi,
                     const std::string& name) {
  std::map<int, K> psi;
  psi.emplace(0, lambda);
  Induction<K> ind(f, w, -1, 0, std::move(psi), chi);
  Rep<K> raw = ind.build(chi, name);
  Matrix<K> pmat(f, w.p, w.p);
  Fp fact = w.f.one();
  for (uint32_t j = 0; j < w.p; ++j) {
    if (j > 0) fact *= w.f.make(j);
    K c = [&] {
      if constexpr (std::is_same_v<K, Fp>)
        return -fact;
      else
        return f.embed(-fact);
    }();
    pmat.at(w.p - 1 - j, j) = c;
  }
  return raw.conjugate(pmat, name);
}

// The p-1 simple restricted modules induced at height 0 (chi(e_{-1}) = 1):
// L(lambda) for lambda = 0..p-2, each of dimension p with rho(e_{-1})^p = Id.
inline Rep<Fp> height0_simple(const Witt& w, Fp lambda) {
  Character chi(w.f);
  chi.set(-1, w.f.one());
  return induce_from_b<Fp>(w.f, w, lambda, chi,
                           "L0(" + std::to_string(lambda.val()) + ")");
}

// Height 1 (chi(e_0) = 1): the simple L(lambda) is induced from a
// one-dimensional b+-module with psi(e_0) = lambda + xi over F_{p^p},
// xi^p = xi + 1. Every e_0-weight then sits in xi + F_p.
inline Rep<Fq> height1_simple(const GFExt& e, const Witt& w, Fp lambda) {
  Character chi(w.f);
  chi.set(0, w.f.one());
  Fq lam = e.embed(lambda) + e.xi();
  return induce_from_b<Fq>(e, w, lam, chi, "L1(" + std::to_string(lambda.val()) + ")");
}

// Restriction to b+ of the height 1 simple, twisted by -xi on e_0 so every
// weight lands in the prime field. Only b+ survives the twist (the bracket
// [e_{-1}, e_1] = 2 e_0 pins the full e_0 action), and as a b+-module the
// result is restricted: chi' = 0.
inline Rep<Fq> height1_simple_twisted_b(const GFExt& e, const Witt& w, Fp lambda) {
  Rep<Fq> r = height1_simple(e, w, lambda).restrict_to(0);
  return r.twist({{0, -e.xi()}}, Character(w.f),
                 "L1t(" + std::to_string(lambda.val()) + ")");
}

// ---------------------------------------------------------------------------
// The p simple restricted modules (chi = 0): L(0) trivial, L(lambda) = Z(lambda)
// for 1 <= lambda <= p-2, and L(p-1) of dimension p-1 sitting inside Z(0) as
// the span of m_0..m_{p-2}.

inline Rep<Fp> simple_restricted(const Witt& w, Fp lambda) {
  const GF& f = w.f;
  uint32_t lv = lambda.val();
  std::string name = "L(" + std::to_string(lv) + ")";
  if (lv == 0) {
    Rep<Fp> r(f, w.p, -1, Character(f), 1, name);
    return r;  // all generators act by zero
  }
  if (lv <= w.p - 2) {
    Rep<Fp> r = verma(w, lambda);
    r.name = name;
    return r;
  }
  Rep<Fp> z = verma(w, f.zero());
  Rep<Fp> r(f, w.p, -1, Character(f), w.p - 1, name);
  for (int i = -1; i <= r.hi(); ++i)
    for (size_t a = 0; a + 1 < w.p; ++a)
      for (size_t b = 0; b + 1 < w.p; ++b) r.rho(i).at(a, b) = z.rho(i).at(a, b);
  return r;
}

// ---------------------------------------------------------------------------
// Diagonalize rho(e_0) when its eigenvalues lie in the candidate list
// (c in F_p, and over the extension field also xi + c). Returns the
// conjugated module plus the basis-change matrix, or nullopt when the
// eigenvectors do not span.

template <class K>
struct Diagonalized {
  Rep<K> rep;
  Matrix<K> basis;  // columns are the eigenvectors in the original basis
};

template <class K>
std::optional<Diagonalized<K>> diagonalize_e0(const Rep<K>& r) {
  if (r.lo > 0) return std::nullopt;
  const auto& f = r.f;
  std::vector<K> candidates;
  for (int64_t c = 0; c < static_cast<int64_t>(r.p); ++c) candidates.push_back(f.make(c));
  if constexpr (std::is_same_v<K, Fq>) {
    for (int64_t c = 0; c < static_cast<int64_t>(r.p); ++c)
      candidates.push_back(r.f.xi() + f.make(c));
  }
  Matrix<K> pm(f, r.dim, r.dim);
  std::vector<K> diag;
  size_t col = 0;
  for (const K& ev : candidates) {
    Matrix<K> shifted = r.rho(0) - Matrix<K>::identity(f, r.dim) * ev;
    for (const auto& v : kernel_basis(shifted)) {
      if (col >= r.dim) return std::nullopt;
      for (size_t a = 0; a < r.dim; ++a) pm.at(a, col) = v[a];
      diag.push_back(ev);
      ++col;
    }
  }
  if (col != r.dim) return std::nullopt;
  Rep<K> cr = r.conjugate(pm, r.name);
  return Diagonalized<K>{std::move(cr), std::move(pm)};
}

// ---------------------------------------------------------------------------
// Simplicity test. First route: the exact certificate for modules whose
// e_0-action is diagonalizable with pairwise distinct eigenvalues. Fallback
// for small modules: spin the submodule generated by each standard basis
// vector; any proper closure refutes simplicity, while all-full closures
// accept (a standard-basis witness may in principle be missed, which is the
// accepted trade-off at this scale). Returns nullopt when neither applies.

template <class K>
std::optional<bool> is_simple(const Rep<K>& r, size_t spin_cap = 25) {
  if (r.dim == 1) return true;
  if (auto diag = diagonalize_e0(r)) {
    auto multfree = diag->rep.is_simple_weight_multfree();
    if (multfree) return multfree;
  }
  if (r.dim > spin_cap) return std::nullopt;
  for (size_t start = 0; start < r.dim; ++start) {
    std::vector<std::vector<K>> closure;
    std::vector<std::vector<K>> queue;
    std::vector<K> seed(r.dim, r.f.zero());
    seed[start] = r.f.one();
    queue.push_back(std::move(seed));
    while (!queue.empty()) {
      std::vector<K> v = std::move(queue.back());
      queue.pop_back();
      if (in_span<K>(r.f, closure, v)) continue;
      for (int i = r.lo; i <= r.hi(); ++i) queue.push_back(r.rho(i).apply(v));
      closure.push_back(std::move(v));
    }
    if (closure.size() != r.dim) return false;
  }
  return true;
}

}  // namespace wq
