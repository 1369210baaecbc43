#include "doctest.h"

#include <vector>

#include "wq/der1.hpp"

using namespace wq;

TEST_CASE("derivations into the trivial module detect the two free generator duals") {
  for (uint32_t p : {5u, 7u}) {
    Witt w(p);
    GF f = w.f;
    Rep<Fp> k = simple_restricted(w, f.make(0));
    CHECK(h1_weight(k, f.make(-1)) == 1);
    CHECK(h1_weight(k, f.make(-2)) == 1);
    CHECK(h1_weight(k, f.make(-3)) == 0);
    CHECK(h1_weight(k, f.make(0)) == 0);
    CHECK(restricted_h1(k, f.make(-1)) == 1);
    CHECK(restricted_h1(k, f.make(-2)) == 1);
    CHECK(restricted_h1(k, f.make(-3)) == 0);
  }
}

TEST_CASE("the weight-0 derivation into Z(p-1) and its closed form") {
  for (uint32_t p : {5u, 7u}) {
    Witt w(p);
    GF f = w.f;
    Rep<Fp> z = verma(w, f.make(p - 1));
    DerSpace<Fp> d = der_space(z, f.make(0));
    REQUIRE(d.cocycles.size() == 1);
    // slots are (k, m_k); the unique class is d(e_k) = (k+1) m_k up to scale
    REQUIRE(d.slots.size() == p - 2);
    for (size_t s = 0; s < d.slots.size(); ++s) {
      CHECK(d.slots[s].first == int(s) + 1);
      CHECK(d.slots[s].second == s + 1);
    }
    Fp scale = d.cocycles[0][0] / f.make(2);
    for (size_t s = 0; s < d.slots.size(); ++s)
      CHECK(d.cocycles[0][s] == scale * f.make(int64_t(s) + 2));
    // no inner derivations of weight 0 into Z(p-1)
    CHECK(inner_cochains(z, f.make(0), d.slots).empty());
    CHECK(h1_weight(z, f.make(0)) == 1);
    CHECK(restricted_h1(z, f.make(0)) == 1);
  }
}

TEST_CASE("inner cochains are cocycles") {
  Witt w(7);
  GF f = w.f;
  for (int64_t lam : {1l, 3l, 6l}) {
    Rep<Fp> z = verma(w, f.make(lam));
    for (int64_t mu = 0; mu < 7; ++mu) {
      DerSpace<Fp> d = der_space(z, f.make(mu));
      auto inner = inner_cochains(z, f.make(mu), d.slots);
      for (const auto& v : inner) CHECK(in_span<Fp>(f, d.cocycles, v));
    }
  }
}

TEST_CASE("restricted Ext between Verma modules, p = 5 spot values") {
  Witt w(5);
  GF f = w.f;
  auto ext = [&](int64_t mu, int64_t lam) {
    return restricted_h1(verma(w, f.make(lam)), f.make(mu));
  };
  // weight differences 2 and 3
  CHECK(ext(0, 2) == 1);
  CHECK(ext(0, 3) == 1);
  CHECK(ext(2, 4) == 1);
  CHECK(ext(2, 0) == 1);  // 0 - 2 = 3 mod 5
  CHECK(ext(1, 4) == 1);
  // exceptional unordered pairs {0}, {4}, {0,1}, {0,4}, {3,4}
  CHECK(ext(0, 0) == 1);
  CHECK(ext(4, 4) == 1);
  CHECK(ext(0, 1) == 1);
  CHECK(ext(1, 0) == 1);
  CHECK(ext(0, 4) == 1);
  CHECK(ext(4, 0) == 1);
  CHECK(ext(3, 4) == 1);
  CHECK(ext(4, 3) == 1);
  // absent edges
  CHECK(ext(1, 1) == 0);
  CHECK(ext(2, 2) == 0);
  CHECK(ext(3, 3) == 0);
  CHECK(ext(1, 2) == 0);
  CHECK(ext(2, 3) == 0);
}

TEST_CASE("restricted Ext between Verma modules, p = 7 spot values") {
  Witt w(7);
  GF f = w.f;
  auto ext = [&](int64_t mu, int64_t lam) {
    return restricted_h1(verma(w, f.make(lam)), f.make(mu));
  };
  CHECK(ext(0, 2) == 1);
  CHECK(ext(0, 3) == 1);
  CHECK(ext(0, 4) == 1);  // difference 4 appears from p = 7 on
  CHECK(ext(0, 5) == 0);
  CHECK(ext(2, 0) == 1);  // (mu, lam) = (-5, 0) up to mod p
  CHECK(ext(0, 0) == 1);
  CHECK(ext(6, 6) == 1);  // (-1, -1)
  CHECK(ext(6, 0) == 1);  // (-1, 0)
  CHECK(ext(0, 6) == 1);  // (0, -1)
  CHECK(ext(0, 1) == 1);
  CHECK(ext(1, 0) == 0);  // asymmetric from p = 7 on
  CHECK(ext(5, 6) == 1);  // (-2, -1)
  CHECK(ext(6, 4) == 1);  // (-1, 4)
  CHECK(ext(3, 3) == 0);
  CHECK(ext(1, 2) == 0);
}

TEST_CASE("ordinary H^1 dominates restricted H^1") {
  Witt w(5);
  GF f = w.f;
  for (int64_t lam = 0; lam < 5; ++lam)
    for (int64_t mu = 0; mu < 5; ++mu) {
      Rep<Fp> z = verma(w, f.make(lam));
      CHECK(h1_weight(z, f.make(mu)) >= restricted_h1(z, f.make(mu)));
    }
}

TEST_CASE("height 0 targets through the same engine") {
  Witt w(5);
  GF f = w.f;
  auto ext = [&](int64_t mu, int64_t lam) {
    return restricted_h1(height0_simple(w, f.make(lam)), f.make(mu));
  };
  CHECK(ext(0, 0) == 1);  // self-extension at 0
  CHECK(ext(1, 0) == 1);
  CHECK(ext(0, 1) == 1);
  CHECK(ext(1, 1) == 0);
  CHECK(ext(0, 2) == 1);
  CHECK(ext(2, 1) == 0);  // difference -1 is not an edge
  CHECK(ext(3, 1) == 1);  // 1 - 3 = -2 = 3 mod 5
}

TEST_CASE("height 1 targets over the extension field") {
  Witt w(5);
  GFExt e{5};
  auto ext = [&](int64_t mu, int64_t lam) {
    Rep<Fq> L = height1_simple(e, w, w.f.make(lam));
    return restricted_h1(L, e.xi() + e.make(mu));
  };
  CHECK(ext(0, 2) == 1);
  CHECK(ext(0, 3) == 1);
  CHECK(ext(0, 0) == 0);  // no loops at height 1
  CHECK(ext(0, 1) == 0);
  CHECK(ext(0, 4) == 0);
  CHECK(ext(3, 0) == 1);  // 0 - 3 = 2 mod 5
}

TEST_CASE("cubic invariants: factorizations and the cross-gap identity") {
  for (uint32_t p : {5u, 7u, 11u, 13u, 17u}) {
    GF f(p);
    Fp j5 = f.make(int64_t(p) - 5);
    for (int64_t l = 0; l < int64_t(p); ++l) {
      Fp lam = f.make(l);
      CHECK(poly_gap5_first(f, j5, lam) ==
            f.make(2) * lam * (lam - f.one()) * (lam - f.make(4)));
      CHECK(poly_gap5_second(f, j5, lam) ==
            -(f.make(4) / f.make(3)) * lam * (lam - f.make(2)) * (lam - f.make(4)));
    }
    Fp inv6 = f.make(6).inv();
    for (int64_t jv = 0; jv < int64_t(p); ++jv)
      for (int64_t l = 0; l < int64_t(p); ++l) {
        Fp j = f.make(jv), lam = f.make(l);
        Fp lhs = f.make(2) * (poly_gap7_first(f, j, lam) + f.make(2) * poly_gap7_second(f, j, lam)) -
                 f.make(3) * (poly_gap5_first(f, j, lam) + f.make(2) * poly_gap5_second(f, j, lam));
        CHECK(lhs == inv6 * j * (j + f.one()) * (j + lam));
      }
  }
}
