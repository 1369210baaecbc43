#include "doctest.h"

#include <vector>

#include "wq/witt.hpp"

using namespace wq;

namespace {
std::vector<Fp> basis_vec(const Witt& w, int i) {
  std::vector<Fp> v(w.p, w.f.zero());
  v[w.slot(i)] = w.f.one();
  return v;
}
bool is_zero_vec(const std::vector<Fp>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}
}  // namespace

TEST_CASE("structure constants, antisymmetry, Jacobi") {
  for (uint32_t p : {5u, 7u}) {
    Witt w(p);
    CHECK(w.bracket_coeff(0, 1) == 1);
    CHECK(w.bracket_coeff(1, 0) == -1);
    CHECK(w.bracket_coeff(-1, 1) == 2);
    CHECK(w.bracket_coeff(int(p) - 2, 1) == 0);  // lands out of range
    for (int i = -1; i <= int(p) - 2; ++i)
      for (int j = -1; j <= int(p) - 2; ++j) {
        auto lhs = bracket_vec<Fp>(w.f, w, basis_vec(w, i), basis_vec(w, j));
        auto rhs = bracket_vec<Fp>(w.f, w, basis_vec(w, j), basis_vec(w, i));
        for (size_t s = 0; s < p; ++s) CHECK(lhs[s] == -rhs[s]);
      }
    for (int i = -1; i <= int(p) - 2; ++i)
      for (int j = i; j <= int(p) - 2; ++j)
        for (int k = j; k <= int(p) - 2; ++k) {
          auto x = basis_vec(w, i), y = basis_vec(w, j), z = basis_vec(w, k);
          auto t1 = bracket_vec<Fp>(w.f, w, x, bracket_vec<Fp>(w.f, w, y, z));
          auto t2 = bracket_vec<Fp>(w.f, w, y, bracket_vec<Fp>(w.f, w, z, x));
          auto t3 = bracket_vec<Fp>(w.f, w, z, bracket_vec<Fp>(w.f, w, x, y));
          for (size_t s = 0; s < p; ++s) CHECK((t1[s] + t2[s] + t3[s]).is_zero());
        }
  }
}

TEST_CASE("ad(e_0) is diagonal with the grading as eigenvalues") {
  Witt w(7);
  Matrix<Fp> m = ad_matrix<Fp>(w.f, w, basis_vec(w, 0));
  for (size_t a = 0; a < 7; ++a)
    for (size_t b = 0; b < 7; ++b) {
      if (a == b)
        CHECK(m.at(a, b) == w.f.make(w.index_of_slot(a)));
      else
        CHECK(m.at(a, b).is_zero());
    }
}

TEST_CASE("p-th power map on the basis and on sums") {
  for (uint32_t p : {5u, 7u, 11u}) {
    Witt w(p);
    for (int i = -1; i <= int(p) - 2; ++i) {
      auto y = p_power<Fp>(w.f, w, basis_vec(w, i));
      if (i == 0)
        CHECK(y == basis_vec(w, 0));
      else
        CHECK(is_zero_vec(y));
    }
    // defining identity ad(x^{[p]}) = ad(x)^p on a few mixed elements
    std::vector<Fp> x(p, w.f.zero());
    x[w.slot(-1)] = w.f.make(2);
    x[w.slot(0)] = w.f.make(3);
    x[w.slot(1)] = w.f.make(1);
    auto y = p_power<Fp>(w.f, w, x);
    CHECK(ad_matrix<Fp>(w.f, w, y) == ad_matrix<Fp>(w.f, w, x).pow(p));
  }
}

TEST_CASE("character heights and canonical representatives") {
  GF f(7);
  Character zero(f);
  CHECK(zero.height() == -1);
  CHECK(zero.is_zero());
  for (int r : {-1, 0, 1, 2, 4, 6}) {
    Character c = Character::representative(f, r);
    CHECK(c.height() == r);
  }
  CHECK_THROWS_AS(Character::representative(f, 3), error);
  CHECK_THROWS_AS(Character::representative(f, 5), error);
  CHECK(Character::representative(f, 6)(5) == f.one());
  CHECK(Character::representative(f, 0)(-1) == f.one());
  CHECK(Character::representative(f, 1)(0) == f.one());

  Character c(f);
  c.set(2, f.make(4));
  CHECK(c.height() == 3);
  CHECK(c.negate()(2) == f.make(3));
  CHECK(c.negate().height() == 3);
}

TEST_CASE("character json round trip and validation") {
  GF f(5);
  Character c(f);
  c.set(-1, f.make(2));
  c.set(3, f.make(1));
  nlohmann::json j = c.to_json();
  CHECK(j.is_array());
  CHECK(j.size() == 5);
  CHECK(j[0] == 2);  // e_{-1} comes first
  CHECK(j[4] == 1);
  Character back = Character::from_json(f, j);
  CHECK(back == c);
  CHECK_THROWS_AS(Character::from_json(f, nlohmann::json::array({1, 2})), error);
  CHECK_THROWS_AS(Character::from_json(f, nlohmann::json::object()), error);
  // negative residues are reduced
  Character neg = Character::from_json(f, nlohmann::json::array({-1, 0, 0, 0, 0}));
  CHECK(neg(-1) == f.make(4));
}

TEST_CASE("radical of the chi-form on the non-negative part") {
  Witt w(5);
  GF f = w.f;

  Character r2(f);
  r2.set(1, f.one());  // height 2
  auto rad = form_radical(w, r2, 0, 3);
  REQUIRE(rad.size() == 2);
  // radical = span{e_2, e_3}
  CHECK(in_span<Fp>(f, rad, basis_vec(w, 2)));
  CHECK(in_span<Fp>(f, rad, basis_vec(w, 3)));
  CHECK_FALSE(in_span<Fp>(f, rad, basis_vec(w, 0)));

  Character r3(f);
  r3.set(2, f.one());  // height 3, chi(e_1) = 0
  auto rad3 = form_radical(w, r3, 0, 3);
  REQUIRE(rad3.size() == 2);
  CHECK(in_span<Fp>(f, rad3, basis_vec(w, 1)));
  CHECK(in_span<Fp>(f, rad3, basis_vec(w, 3)));

  Character r3g(f);  // generic height 3: chi(e_1) = chi(e_2) = 1
  r3g.set(1, f.one());
  r3g.set(2, f.one());
  auto radg = form_radical(w, r3g, 0, 3);
  REQUIRE(radg.size() == 2);
  CHECK(in_span<Fp>(f, radg, basis_vec(w, 3)));
  std::vector<Fp> mix(w.p, f.zero());  // -2 e_1 + e_2
  mix[w.slot(1)] = f.make(-2);
  mix[w.slot(2)] = f.one();
  CHECK(in_span<Fp>(f, radg, mix));
  CHECK_FALSE(in_span<Fp>(f, radg, basis_vec(w, 1)));
}

TEST_CASE("centralizer of a height p-1 character") {
  Witt w(5);
  GF f = w.f;
  Character chi(f);
  chi.set(3, f.one());
  auto cz = centralizer(w, chi);
  REQUIRE(cz.size() == 1);
  CHECK(in_span<Fp>(f, cz, basis_vec(w, -1)));
  auto rep = classify_restricted(w, cz);
  CHECK(rep.cls == SubalgebraClass::p_nilpotent);

  // second sample: chi(e_1) = chi(e_3) = 1
  Character chi2(f);
  chi2.set(1, f.one());
  chi2.set(3, f.one());
  auto cz2 = centralizer(w, chi2);
  CHECK(cz2.size() == 1);
}

TEST_CASE("classification of small subalgebras") {
  Witt w(5);
  auto one = [&](int i) { return std::vector<std::vector<Fp>>{basis_vec(w, i)}; };
  CHECK(classify_restricted(w, one(0)).cls == SubalgebraClass::torus);
  CHECK(classify_restricted(w, one(1)).cls == SubalgebraClass::p_nilpotent);
  CHECK(classify_restricted(w, one(-1)).cls == SubalgebraClass::p_nilpotent);

  std::vector<std::vector<Fp>> b01{basis_vec(w, 0), basis_vec(w, 1)};
  auto rep01 = classify_restricted(w, b01);
  CHECK(rep01.cls == SubalgebraClass::mixed);
  CHECK(rep01.bracket_closed);
  CHECK_FALSE(rep01.abelian);

  std::vector<std::vector<Fp>> open{basis_vec(w, -1), basis_vec(w, 1)};
  auto repo = classify_restricted(w, open);
  CHECK(repo.cls == SubalgebraClass::mixed);
  CHECK_FALSE(repo.bracket_closed);

  std::vector<std::vector<Fp>> nplus{basis_vec(w, 1), basis_vec(w, 2), basis_vec(w, 3)};
  CHECK(classify_restricted(w, nplus).cls == SubalgebraClass::p_nilpotent);
}

TEST_CASE("p-th powers over the extension field") {
  Witt w(5);
  GFExt e{5};
  std::vector<Fq> x(w.p, e.zero());
  x[w.slot(0)] = e.xi();
  x[w.slot(1)] = e.one();
  auto y = p_power<Fq>(e, w, x);
  CHECK(ad_matrix<Fq>(e, w, y) == ad_matrix<Fq>(e, w, x).pow(w.p));
}
