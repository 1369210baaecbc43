#pragma once
// Conformance suite: named groups of cross-checks between the computation
// engines and the closed-form descriptions. Each group yields one result per
// prime; a group passes when every check inside it does. Shared by the CLI
// `verify` subcommand and the acceptance runner.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wq/der1.hpp"
#include "wq/ext1.hpp"
#include "wq/midheight.hpp"
#include "wq/quiver.hpp"
#include "wq/rep.hpp"
#include "wq/witt.hpp"

namespace wq {

struct VerifyResult {
  std::string group;
  uint32_t p = 0;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  uint32_t cap = Ext1Options{}.cap;
  uint64_t seed = 0x77697474;  // deterministic default
  uint32_t cocycle_trials = 1000;
  uint32_t ad_trials = 1000;
};

inline const std::vector<std::string>& verify_group_names() {
  static const std::vector<std::string> names{"verma",  "simple", "h0",      "h1", "mid",
                                              "pm1",    "polys",  "duality", "props"};
  return names;
}

namespace detail {

inline VerifyResult quiver_against_closed_form(const std::string& group, uint32_t p,
                                               const Quiver& computed, const Quiver& expected) {
  QuiverDiff diff = diff_quivers(computed, expected);
  VerifyResult r{group, p, diff.empty(), ""};
  if (diff.empty()) {
    r.detail = std::to_string(computed.nodes.size()) + " nodes, " +
               std::to_string(computed.edge_count()) + " arrows match the closed form";
  } else {
    r.detail = "mismatch:\n" + diff.to_string(computed);
  }
  return r;
}

}  // namespace detail

// --- verma: Ext^1 between baby Vermas matches the closed form, both engines.
inline VerifyResult verify_verma(uint32_t p) {
  try {
    Quiver q = verma_quiver(p, Engine::both);
    return detail::quiver_against_closed_form("verma", p, q, expected_quiver(p, -1, Family::verma));
  } catch (const engine_mismatch& e) {
    return {"verma", p, false, e.what()};
  }
}

// --- simple: Ext^1 between restricted simples matches the closed form.
inline VerifyResult verify_simple(uint32_t p, Engine eng = Engine::both) {
  try {
    Quiver q = simple_quiver(p, eng);
    VerifyResult r =
        detail::quiver_against_closed_form("simple", p, q, expected_quiver(p, -1, Family::simple));
    if (r.pass) {
      GF f(p);
      auto roots = difference_six_roots(f);
      std::ostringstream os;
      os << r.detail << "; corner pair {0," << p - 1 << "} has multiplicity "
         << q.mult(0, p - 1) << "/" << q.mult(p - 1, 0);
      os << "; difference-6 roots:";
      if (roots.empty()) os << " none";
      for (uint32_t rt : roots) os << " " << rt;
      r.detail = os.str();
    }
    return r;
  } catch (const engine_mismatch& e) {
    return {"simple", p, false, e.what()};
  }
}

// --- h0: height-0 quiver matches both the closed form and the Verma quiver
// with the node p-1 removed; the constructed simples are pairwise
// non-isomorphic and the lambda = p-1 construction rebuilds L(0).
inline VerifyResult verify_h0(uint32_t p) {
  try {
    Quiver q = height0_quiver(p, Engine::both);
    VerifyResult r =
        detail::quiver_against_closed_form("h0", p, q, expected_quiver(p, 0, Family::simple));
    if (!r.pass) return r;

    Quiver vq = verma_quiver(p, Engine::derivation);
    for (uint32_t mu = 0; mu + 1 < p; ++mu)
      for (uint32_t lam = 0; lam + 1 < p; ++lam)
        if (q.mult(mu, lam) != vq.mult(mu, lam)) {
          r.pass = false;
          r.detail = "height-0 quiver is not the Verma quiver minus its last node at (" +
                     std::to_string(mu) + ", " + std::to_string(lam) + ")";
          return r;
        }

    Witt w(p);
    const GF& f = w.f;
    std::vector<Rep<Fp>> simples;
    for (uint32_t lam = 0; lam + 1 < p; ++lam) simples.push_back(height0_simple(w, f.make(lam)));
    for (size_t a = 0; a < simples.size(); ++a)
      for (size_t b = 0; b < simples.size(); ++b) {
        uint32_t h = hom_dim(simples[a], simples[b]);
        uint32_t want = a == b ? 1 : 0;
        if (h != want) {
          r.pass = false;
          r.detail = "hom(L" + std::to_string(a) + ", L" + std::to_string(b) + ") = " +
                     std::to_string(h) + ", expected " + std::to_string(want);
          return r;
        }
      }
    Rep<Fp> wrap = height0_simple(w, f.make(int64_t(p) - 1));
    if (hom_dim(wrap, simples[0]) != 1 || wrap.dim != simples[0].dim) {
      r.pass = false;
      r.detail = "the lambda = p-1 construction is not isomorphic to L(0)";
      return r;
    }
    r.detail += "; simples pairwise non-isomorphic; lambda=p-1 rebuilds L(0)";
    return r;
  } catch (const engine_mismatch& e) {
    return {"h0", p, false, e.what()};
  }
}

// --- h1: height-1 quiver over F_{p^p} matches the congruence closed form.
inline VerifyResult verify_h1(uint32_t p) {
  try {
    Quiver q = height1_quiver(p, Engine::both);
    VerifyResult r =
        detail::quiver_against_closed_form("h1", p, q, expected_quiver(p, 1, Family::simple));
    if (r.pass)
      for (uint32_t i = 0; i < p; ++i)
        if (q.mult(i, i) != 0) {
          r.pass = false;
          r.detail = "unexpected loop at node " + std::to_string(i);
          break;
        }
    return r;
  } catch (const engine_mismatch& e) {
    return {"h1", p, false, e.what()};
  }
}

// --- mid: every middle height with the default character satisfies the
// radical-based descriptions wherever their hypotheses hold.
inline VerifyResult verify_mid(uint32_t p, uint32_t cap = Ext1Options{}.cap) {
  Witt w(p);
  VerifyResult r{"mid", p, true, ""};
  std::ostringstream os;
  for (int height = 2; height <= static_cast<int>(p) - 2; ++height) {
    Character chi = default_midheight_character(w.f, height);
    MidHeightReport rep = analyze_midheight(w, chi, cap);
    os << "r=" << height << ": ext_SS=" << (rep.ext_SS ? std::to_string(*rep.ext_SS) : "skipped")
       << " ext_LL=" << (rep.ext_LL ? std::to_string(*rep.ext_LL) : "skipped");
    if (!rep.even_bound_equality.empty()) os << " [bound equality " << rep.even_bound_equality << "]";
    os << "; ";
    auto fail = [&](const std::string& msg) {
      r.pass = false;
      os << "FAIL r=" << height << ": " << msg << "; ";
    };
    if (rep.lower_bound_holds == false) fail("ext_LL >= ext_SS - 1 violated");
    if (rep.even_formula_match == false) fail("even-height closed form violated");
    if (rep.S_is_simple == false) fail("S is not simple");
    if (rep.rad_is_ideal && rep.chi_vanishes_on_rad) {
      if (!rep.quotient_dim_identity) fail("quotient dimension identity violated");
      if (rep.s_rad_invariant == false) fail("rad does not act by zero on S");
      if (rep.ext_SS && rep.rad_h1_dim && *rep.ext_SS != *rep.rad_h1_dim)
        fail("ext_SS differs from dim H^1(u(rad), k)");
    }
  }
  r.detail = os.str();
  return r;
}

// --- pm1: the top-height samples classify definitely and encode the matching
// quiver; ad(x^{[p]}) = ad(x)^p on random elements.
inline VerifyResult verify_pm1(uint32_t p, uint32_t ad_trials = 1000, uint64_t seed = 0x77697474) {
  Witt w(p);
  const GF& f = w.f;
  VerifyResult r{"pm1", p, true, ""};
  std::ostringstream os;

  std::vector<Character> samples;
  {
    Character a(f);
    a.set(static_cast<int>(p) - 2, f.one());
    samples.push_back(a);
    Character b(f);
    b.set(1, f.one());
    b.set(static_cast<int>(p) - 2, f.one());
    samples.push_back(b);
  }
  for (const Character& chi : samples) {
    TopHeightReport t = classify_height_pm1(w, chi);
    os << "class " << to_string(t.structure.cls) << " (centralizer dim "
       << t.centralizer_basis.size() << "); ";
    if (t.structure.cls == SubalgebraClass::torus) {
      if (!t.quiver || t.quiver->edge_count() != 0) {
        r.pass = false;
        os << "FAIL: torus must encode an arrowless quiver; ";
      }
    } else if (t.structure.cls == SubalgebraClass::p_nilpotent) {
      if (!t.quiver || t.quiver->edge_count() != 1 || t.quiver->mult(0, 0) != 1) {
        r.pass = false;
        os << "FAIL: p-nilpotent must encode exactly one loop; ";
      }
    } else {
      if (t.quiver) {
        r.pass = false;
        os << "FAIL: mixed centralizer must not claim a quiver; ";
      }
    }
  }

  std::mt19937_64 rng(seed);
  uint32_t ok = 0;
  for (uint32_t trial = 0; trial < ad_trials; ++trial) {
    std::vector<Fp> x(p, f.zero());
    for (size_t a = 0; a < p; ++a) x[a] = f.make(static_cast<int64_t>(rng() % p));
    std::vector<Fp> xp = p_power<Fp>(f, w, x);
    if (ad_matrix<Fp>(f, w, x).pow(p) == ad_matrix<Fp>(f, w, xp)) ++ok;
  }
  if (ok != ad_trials) {
    r.pass = false;
    os << "FAIL: ad(x^[p]) = ad(x)^p held on only " << ok << "/" << ad_trials << " trials; ";
  } else {
    os << "ad(x^[p]) = ad(x)^p on " << ad_trials << " random elements";
  }
  r.detail = os.str();
  return r;
}

// --- polys: the gap-5 factorizations at j = p-5 and the cross-gap cubic
// identity over all of F_p x F_p.
inline VerifyResult verify_polys(uint32_t p) {
  GF f(p);
  VerifyResult r{"polys", p, true, ""};
  uint32_t checked = 0;
  Fp j5 = f.make(static_cast<int64_t>(p) - 5);
  for (int64_t l = 0; l < static_cast<int64_t>(p); ++l) {
    Fp lam = f.make(l);
    bool a = poly_gap5_first(f, j5, lam) ==
             f.make(2) * lam * (lam - f.one()) * (lam - f.make(4));
    bool b = poly_gap5_second(f, j5, lam) ==
             -(f.make(4) / f.make(3)) * lam * (lam - f.make(2)) * (lam - f.make(4));
    if (!a || !b) {
      r.pass = false;
      r.detail = "gap-5 factorization fails at lambda = " + std::to_string(l);
      return r;
    }
    checked += 2;
  }
  Fp inv6 = f.make(6).inv();
  for (int64_t jv = 0; jv < static_cast<int64_t>(p); ++jv)
    for (int64_t l = 0; l < static_cast<int64_t>(p); ++l) {
      Fp j = f.make(jv), lam = f.make(l);
      Fp lhs =
          f.make(2) * (poly_gap7_first(f, j, lam) + f.make(2) * poly_gap7_second(f, j, lam)) -
          f.make(3) * (poly_gap5_first(f, j, lam) + f.make(2) * poly_gap5_second(f, j, lam));
      if (lhs != inv6 * j * (j + f.one()) * (j + lam)) {
        r.pass = false;
        r.detail = "cross-gap identity fails at (j, lambda) = (" + std::to_string(jv) + ", " +
                   std::to_string(l) + ")";
        return r;
      }
      ++checked;
    }
  r.detail = std::to_string(checked) + " identity evaluations hold";
  return r;
}

// --- duality: Ext^1(L(mu), L(lambda)) = Ext^1(L(lambda)*, L(mu)*) on every
// ordered pair of restricted simples.
inline VerifyResult verify_duality(uint32_t p, uint32_t cap = Ext1Options{}.cap) {
  Witt w(p);
  const GF& f = w.f;
  std::vector<Rep<Fp>> simples, duals;
  for (uint32_t lam = 0; lam < p; ++lam) {
    simples.push_back(simple_restricted(w, f.make(lam)));
    duals.push_back(simples.back().dual());
  }
  Ext1Options opt;
  opt.cap = cap;
  VerifyResult r{"duality", p, true, ""};
  for (uint32_t mu = 0; mu < p; ++mu)
    for (uint32_t lam = 0; lam < p; ++lam) {
      uint32_t lhs = ext1(simples[mu], simples[lam], opt).dim;
      uint32_t rhs = ext1(duals[lam], duals[mu], opt).dim;
      if (lhs != rhs) {
        r.pass = false;
        r.detail = "Ext(L(" + std::to_string(mu) + "), L(" + std::to_string(lam) + ")) = " +
                   std::to_string(lhs) + " but the dualized pair gives " + std::to_string(rhs);
        return r;
      }
    }
  r.detail = std::to_string(p * p) + " ordered pairs satisfy the duality identity";
  return r;
}

// --- props: connectivity and loop-freedom of the restricted simple quiver,
// validation of every constructed module, and randomized extension checks on
// cocycle representatives.
inline VerifyResult verify_props(uint32_t p, uint32_t cocycle_trials = 1000,
                                 uint64_t seed = 0x77697474, uint32_t cap = Ext1Options{}.cap) {
  Witt w(p);
  const GF& f = w.f;
  VerifyResult r{"props", p, true, ""};
  std::ostringstream os;

  Quiver sq = simple_quiver(p, Engine::derivation);
  if (!sq.is_connected()) {
    r.pass = false;
    os << "FAIL: restricted simple quiver is disconnected; ";
  }
  for (uint32_t i = 0; i < p; ++i)
    if (sq.mult(i, i) != 0) {
      r.pass = false;
      os << "FAIL: self-extension at node " << i << "; ";
    }

  uint32_t validated = 0;
  for (uint32_t lam = 0; lam < p; ++lam) {
    Rep<Fp> z = verma(w, f.make(lam));
    z.validate();
    ++validated;
    Rep<Fp> s = simple_restricted(w, f.make(lam));
    s.validate();
    ++validated;
    if (lam + 1 < p) {
      Rep<Fp> h0 = height0_simple(w, f.make(lam));
      h0.validate();
      ++validated;
    }
  }
  {
    GFExt e(p);
    for (uint32_t lam = 0; lam < p; ++lam) {
      Rep<Fq> h1 = height1_simple(e, w, f.make(lam));
      h1.validate();
      ++validated;
    }
  }
  os << validated << " modules validated; ";

  // randomized checks of extension representatives on Verma pairs
  Ext1Options opt;
  opt.cap = cap;
  opt.want_basis = true;
  std::vector<std::pair<uint32_t, uint32_t>> pairs = {
      {0, 2}, {0, 3}, {1, 3}, {2, 4 % p}, {0, 0}};
  std::vector<std::pair<Rep<Fp>, std::vector<std::vector<Matrix<Fp>>>>> found;
  uint32_t classes = 0;
  for (auto [mu, lam] : pairs) {
    Rep<Fp> src = verma(w, f.make(mu));
    Rep<Fp> tgt = verma(w, f.make(lam));
    Ext1Result<Fp> res = ext1(src, tgt, opt);
    classes += res.dim;
    if (res.basis.empty()) continue;
    uint32_t per = cocycle_trials / static_cast<uint32_t>(res.basis.size()) + 1;
    for (const auto& d : res.basis)
      if (!verify_cocycle(src, tgt, d, per, seed)) {
        r.pass = false;
        os << "FAIL: a cocycle representative for (" << mu << ", " << lam
           << ") violates the extension equations; ";
      }
  }
  os << "randomized trials on " << classes << " extension classes passed";
  r.detail = os.str();
  return r;
}

// Runs the requested groups (all when `which` is empty) over the given primes.
inline std::vector<VerifyResult> run_verify(const std::vector<uint32_t>& primes,
                                            std::vector<std::string> which = {},
                                            const VerifyOptions& opt = {}) {
  if (which.empty()) which = verify_group_names();
  for (const auto& g : which) {
    bool known = false;
    for (const auto& name : verify_group_names()) known = known || name == g;
    if (!known) throw error("verify: unknown group '" + g + "'");
  }
  std::vector<VerifyResult> out;
  for (uint32_t p : primes)
    for (const auto& g : which) {
      if (g == "verma") out.push_back(verify_verma(p));
      else if (g == "simple") out.push_back(verify_simple(p));
      else if (g == "h0") out.push_back(verify_h0(p));
      else if (g == "h1") out.push_back(verify_h1(p));
      else if (g == "mid") out.push_back(verify_mid(p, opt.cap));
      else if (g == "pm1") out.push_back(verify_pm1(p, opt.ad_trials, opt.seed));
      else if (g == "polys") out.push_back(verify_polys(p));
      else if (g == "duality") out.push_back(verify_duality(p, opt.cap));
      else if (g == "props") out.push_back(verify_props(p, opt.cocycle_trials, opt.seed, opt.cap));
    }
  return out;
}

}  // namespace wq
