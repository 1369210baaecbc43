#pragma once
// Ext^1 between u(g_t, chi)-modules by solving the full restricted cocycle
// system. An extension of S by T is a module structure on T (+) S whose
// matrices are block upper triangular with blocks rho_T, rho_S and unknown
// off-diagonal d(e_i); the bracket relations and the p-th power relations of
// u(g_t, chi) become a linear system in the entries of the d(e_i). Cocycles
// modulo the coboundaries d_X(e_i) = rho_T(e_i) X - X rho_S(e_i) give Ext^1.
//
// The system is assembled sparsely. When both modules have diagonalizable
// e_0 action the assembly runs in eigenbases, where every equation touches a
// single weight class and the echelon never mixes classes; the basis change
// is undone before cocycle representatives are returned.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "wq/gf.hpp"
#include "wq/linalg.hpp"
#include "wq/rep.hpp"
#include "wq/witt.hpp"

namespace wq {

namespace detail {

template <class K>
struct SparseRows {
  std::vector<std::vector<std::pair<uint32_t, K>>> row, col;  // nonzeros by row / by column
  explicit SparseRows(const Matrix<K>& m) : row(m.rows), col(m.cols) {
    for (size_t r = 0; r < m.rows; ++r)
      for (size_t c = 0; c < m.cols; ++c)
        if (!m.at(r, c).is_zero()) {
          row[r].emplace_back(static_cast<uint32_t>(c), m.at(r, c));
          col[c].emplace_back(static_cast<uint32_t>(r), m.at(r, c));
        }
  }
};

template <class K>
void require_compatible(const Rep<K>& src, const Rep<K>& tgt) {
  if (src.p != tgt.p || src.lo != tgt.lo)
    throw error("ext1: modules live over different algebras");
  if (!(src.chi == tgt.chi))
    throw error("ext1: modules have different characters");
}

}  // namespace detail

// dim Hom_{u(g_t, chi)}(src, tgt): solutions of rho_T(e_i) X = X rho_S(e_i).
template <class K>
uint32_t hom_dim(const Rep<K>& src, const Rep<K>& tgt) {
  detail::require_compatible(src, tgt);
  const auto& f = src.f;
  size_t dT = tgt.dim, dS = src.dim;
  SparseEchelon<K> ech(f, dT * dS);
  for (int i = src.lo; i <= src.hi(); ++i) {
    detail::SparseRows<K> mt(tgt.rho(i)), ms(src.rho(i));
    for (size_t r = 0; r < dT; ++r)
      for (size_t s = 0; s < dS; ++s) {
        std::map<uint32_t, K> acc;
        for (const auto& [t, v] : mt.row[r]) {
          auto [it, fresh] = acc.try_emplace(static_cast<uint32_t>(t * dS + s), v);
          if (!fresh) it->second += v;
        }
        for (const auto& [t, v] : ms.col[s]) {
          auto [it, fresh] = acc.try_emplace(static_cast<uint32_t>(r * dS + t), -v);
          if (!fresh) it->second -= v;
        }
        typename SparseEchelon<K>::Row rw;
        for (const auto& [c, v] : acc)
          if (!v.is_zero()) rw.emplace_back(c, v);
        if (!rw.empty()) ech.add(std::move(rw));
      }
  }
  return static_cast<uint32_t>(dT * dS - ech.rank());
}

struct Ext1Options {
  uint32_t cap = 20000;     // refuse systems with more unknowns than this
  bool want_basis = false;  // also return cocycle representatives of the classes
};

template <class K>
struct Ext1Result {
  uint32_t dim = 0;            // dim Ext^1
  uint32_t cocycle_dim = 0;    // restricted cocycles
  uint32_t coboundary_dim = 0;
  uint32_t hom = 0;
  // one representative per Ext class: matrices d(e_lo..e_{p-2}) in the
  // original bases of the two modules
  std::vector<std::vector<Matrix<K>>> basis;
};

template <class K>
Ext1Result<K> ext1(const Rep<K>& src0, const Rep<K>& tgt0, const Ext1Options& opt = {}) {
  detail::require_compatible(src0, tgt0);
  const auto& f = src0.f;
  Witt w(src0.p);
  size_t dT = tgt0.dim, dS = src0.dim;
  size_t ngen = static_cast<size_t>(src0.hi() - src0.lo + 1);
  size_t ncols = ngen * dT * dS;
  if (ncols > opt.cap)
    throw error("ext1: system with " + std::to_string(ncols) + " unknowns exceeds the cap of " +
                std::to_string(opt.cap));

  // prefer eigenbases of the e_0 action on both sides
  std::optional<Diagonalized<K>> cs, ct;
  if (src0.lo <= 0) {
    cs = diagonalize_e0(src0);
    ct = diagonalize_e0(tgt0);
  }
  bool conj = cs.has_value() && ct.has_value();
  const Rep<K>& src = conj ? cs->rep : src0;
  const Rep<K>& tgt = conj ? ct->rep : tgt0;

  int lo = src.lo, hi = src.hi();
  auto colix = [&](int i, size_t r, size_t s) {
    return static_cast<uint32_t>((static_cast<size_t>(i - lo) * dT + r) * dS + s);
  };

  std::vector<detail::SparseRows<K>> st, ss;
  st.reserve(ngen);
  ss.reserve(ngen);
  for (int i = lo; i <= hi; ++i) {
    st.emplace_back(tgt.rho(i));
    ss.emplace_back(src.rho(i));
  }

  SparseEchelon<K> ech(f, ncols);
  auto push = [](SparseEchelon<K>& e, const std::map<uint32_t, K>& acc) {
    typename SparseEchelon<K>::Row rw;
    for (const auto& [c, v] : acc)
      if (!v.is_zero()) rw.emplace_back(c, v);
    if (!rw.empty()) e.add(std::move(rw));
  };

  // bracket compatibility rows
  for (int i = lo; i <= hi; ++i)
    for (int j = i + 1; j <= hi; ++j) {
      int64_t cc = w.bracket_coeff(i, j);
      const auto& ti = st[static_cast<size_t>(i - lo)];
      const auto& tj = st[static_cast<size_t>(j - lo)];
      const auto& si = ss[static_cast<size_t>(i - lo)];
      const auto& sj = ss[static_cast<size_t>(j - lo)];
      for (size_t r = 0; r < dT; ++r)
        for (size_t s = 0; s < dS; ++s) {
          std::map<uint32_t, K> acc;
          auto addc = [&](uint32_t c, const K& v) {
            auto [it, fresh] = acc.try_emplace(c, v);
            if (!fresh) it->second += v;
          };
          if (cc != 0 && i + j <= hi) addc(colix(i + j, r, s), f.make(cc));
          for (const auto& [t, v] : ti.row[r]) addc(colix(j, t, s), -v);
          for (const auto& [t, v] : sj.col[s]) addc(colix(i, r, t), -v);
          for (const auto& [t, v] : tj.row[r]) addc(colix(i, t, s), v);
          for (const auto& [t, v] : si.col[s]) addc(colix(j, r, t), v);
          push(ech, acc);
        }
    }

  // p-th power rows: sum_{a+b=p-1} rho_T(e_i)^a d(e_i) rho_S(e_i)^b = d(e_i^{[p]})
  for (int i = lo; i <= hi; ++i) {
    std::vector<Matrix<K>> tp{Matrix<K>::identity(f, dT)}, sp{Matrix<K>::identity(f, dS)};
    for (uint32_t a = 1; a < src.p; ++a) {
      tp.push_back(tp.back() * tgt.rho(i));
      sp.push_back(sp.back() * src.rho(i));
    }
    std::vector<detail::SparseRows<K>> tps, sps;
    for (uint32_t a = 0; a < src.p; ++a) {
      tps.emplace_back(tp[a]);
      sps.emplace_back(sp[a]);
    }
    for (size_t r = 0; r < dT; ++r)
      for (size_t s = 0; s < dS; ++s) {
        std::map<uint32_t, K> acc;
        auto addc = [&](uint32_t c, const K& v) {
          auto [it, fresh] = acc.try_emplace(c, v);
          if (!fresh) it->second += v;
        };
        for (uint32_t a = 0; a < src.p; ++a) {
          uint32_t b = src.p - 1 - a;
          for (const auto& [t, vt] : tps[a].row[r])
            for (const auto& [u, vs] : sps[b].col[s]) addc(colix(i, t, u), vt * vs);
        }
        if (i == 0) addc(colix(0, r, s), -f.one());
        push(ech, acc);
      }
  }

  Ext1Result<K> out;
  out.cocycle_dim = static_cast<uint32_t>(ech.nullity());
  out.hom = hom_dim(src, tgt);
  out.coboundary_dim = static_cast<uint32_t>(dT * dS - out.hom);
  out.dim = out.cocycle_dim - out.coboundary_dim;

  if (opt.want_basis) {
    // coboundary echelon, then keep the cocycles that are new modulo it
    SparseEchelon<K> cob(f, ncols);
    for (size_t r = 0; r < dT; ++r)
      for (size_t s = 0; s < dS; ++s) {
        std::map<uint32_t, K> acc;
        auto addc = [&](uint32_t c, const K& v) {
          auto [it, fresh] = acc.try_emplace(c, v);
          if (!fresh) it->second += v;
        };
        for (int i = lo; i <= hi; ++i) {
          for (const auto& [t, v] : st[static_cast<size_t>(i - lo)].col[r])
            addc(colix(i, t, s), v);
          for (const auto& [t, v] : ss[static_cast<size_t>(i - lo)].row[s])
            addc(colix(i, r, t), -v);
        }
        push(cob, acc);
      }
    if (cob.rank() != out.coboundary_dim) throw error("ext1: coboundary rank mismatch");
    std::optional<Matrix<K>> psinv;
    if (conj) {
      psinv = inverse(cs->basis);
      if (!psinv) throw error("ext1: eigenbasis is singular");
    }
    for (const auto& v : ech.kernel()) {
      if (out.basis.size() == out.dim) break;
      typename SparseEchelon<K>::Row rw;
      for (size_t c = 0; c < ncols; ++c)
        if (!v[c].is_zero()) rw.emplace_back(static_cast<uint32_t>(c), v[c]);
      size_t r0 = cob.rank();
      cob.add(std::move(rw));
      if (cob.rank() == r0) continue;  // dependent: a coboundary shift of earlier picks
      std::vector<Matrix<K>> mats;
      for (int i = lo; i <= hi; ++i) {
        Matrix<K> d(f, dT, dS);
        for (size_t r = 0; r < dT; ++r)
          for (size_t s = 0; s < dS; ++s) d.at(r, s) = v[colix(i, r, s)];
        if (conj) d = ct->basis * d * *psinv;
        mats.push_back(std::move(d));
      }
      out.basis.push_back(std::move(mats));
    }
    if (out.basis.size() != out.dim) throw error("ext1: failed to extract a basis of classes");
  }
  return out;
}

// Monte Carlo check that d defines a genuine u(g_t, chi)-module on T (+) S:
// for random x in the acting algebra, rho_E(x)^p - rho_E(x^{[p]}) must equal
// chi(x)^p times the identity. Returns true when every trial passes.
template <class K>
bool verify_cocycle(const Rep<K>& src, const Rep<K>& tgt, const std::vector<Matrix<K>>& d,
                    uint32_t trials, uint64_t seed) {
  detail::require_compatible(src, tgt);
  const auto& f = src.f;
  Witt w(src.p);
  size_t dT = tgt.dim, dS = src.dim, dE = dT + dS;
  size_t ngen = static_cast<size_t>(src.hi() - src.lo + 1);
  if (d.size() != ngen) throw error("verify_cocycle: one d matrix per generator expected");

  std::vector<Matrix<K>> rho_e;
  for (int i = src.lo; i <= src.hi(); ++i) {
    Matrix<K> m(f, dE, dE);
    for (size_t a = 0; a < dT; ++a)
      for (size_t b = 0; b < dT; ++b) m.at(a, b) = tgt.rho(i).at(a, b);
    for (size_t a = 0; a < dS; ++a)
      for (size_t b = 0; b < dS; ++b) m.at(dT + a, dT + b) = src.rho(i).at(a, b);
    const Matrix<K>& di = d[static_cast<size_t>(i - src.lo)];
    if (di.rows != dT || di.cols != dS) throw error("verify_cocycle: bad d matrix shape");
    for (size_t a = 0; a < dT; ++a)
      for (size_t b = 0; b < dS; ++b) m.at(a, dT + b) = di.at(a, b);
    rho_e.push_back(std::move(m));
  }

  std::mt19937_64 rng(seed);
  auto rand_scalar = [&]() {
    if constexpr (std::is_same_v<K, Fp>) {
      return f.make(static_cast<int64_t>(rng() % src.p));
    } else {
      Fq v = f.zero();
      Fq xp = f.one();
      for (uint32_t k = 0; k < src.p; ++k) {
        v += xp * f.make(static_cast<int64_t>(rng() % src.p));
        xp *= f.xi();
      }
      return v;
    }
  };

  for (uint32_t trial = 0; trial < trials; ++trial) {
    std::vector<K> x(src.p, f.zero());
    for (int i = src.lo; i <= src.hi(); ++i) x[w.slot(i)] = rand_scalar();
    std::vector<K> xp = p_power<K>(f, w, x);
    for (int i = -1; i < src.lo; ++i)
      if (!xp[w.slot(i)].is_zero())
        throw error("verify_cocycle: p-th power escaped the acting subalgebra");

    Matrix<K> rx(f, dE, dE), rxp(f, dE, dE);
    K chix = f.zero();
    for (int i = src.lo; i <= src.hi(); ++i) {
      size_t g = static_cast<size_t>(i - src.lo);
      if (!x[w.slot(i)].is_zero()) rx = rx + rho_e[g] * x[w.slot(i)];
      if (!xp[w.slot(i)].is_zero()) rxp = rxp + rho_e[g] * xp[w.slot(i)];
      chix += x[w.slot(i)] * src.chi_p(i);
    }
    Matrix<K> lhs = rx.pow(src.p) - rxp - Matrix<K>::identity(f, dE) * chix.pow(src.p);
    if (!lhs.is_zero()) return false;
  }
  return true;
}

}  // namespace wq
