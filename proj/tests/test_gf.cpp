#include "doctest.h"

#include <cstdint>
#include <vector>

#include "wq/gf.hpp"
#include "wq/linalg.hpp"

using namespace wq;

TEST_CASE("prime field arithmetic") {
  GF f(7);
  CHECK(f.make(3).val() == 3);
  CHECK(f.make(-1).val() == 6);
  CHECK(f.make(10).val() == 3);
  CHECK((f.make(3) + f.make(5)).val() == 1);
  CHECK((f.make(3) - f.make(5)).val() == 5);
  CHECK((f.make(3) * f.make(5)).val() == 1);
  CHECK((-f.make(3)).val() == 4);
  CHECK(f.make(0).is_zero());
  CHECK_FALSE(f.make(1).is_zero());

  for (int64_t a = 1; a < 7; ++a) {
    Fp x = f.make(a);
    CHECK((x * x.inv()).val() == 1);
    CHECK(x.pow(6).val() == 1);  // Fermat
    CHECK(x.pow(7) == x);
  }
  CHECK((f.make(5) / f.make(3)).val() == 4);  // 4*3 = 12 = 5
  CHECK_THROWS_AS(f.make(0).inv(), error);
  CHECK_THROWS_AS(GF(6), error);
  CHECK_THROWS_AS(GF(1), error);

  GF g(5);
  CHECK_THROWS_AS(f.make(1) + g.make(1), error);
}

TEST_CASE("polynomial root enumeration") {
  // 2x^2 - 10x + 3 over several primes (coefficients low degree first)
  auto roots_of = [](uint32_t p) {
    GF f(p);
    std::vector<Fp> c{f.make(3), f.make(-10), f.make(2)};
    return poly_roots(c, f);
  };
  CHECK(roots_of(5) == std::vector<uint32_t>{1, 4});
  CHECK(roots_of(7) == std::vector<uint32_t>{});
  CHECK(roots_of(11) == std::vector<uint32_t>{});
  CHECK(roots_of(13) == std::vector<uint32_t>{});
  CHECK(roots_of(17) == std::vector<uint32_t>{8, 14});

  GF f(7);
  // x^2 - 1
  std::vector<Fp> c{f.make(-1), f.make(0), f.make(1)};
  CHECK(poly_roots(c, f) == std::vector<uint32_t>{1, 6});
}

TEST_CASE("degree-p extension with x^p = x + 1") {
  for (uint32_t p : {5u, 7u}) {
    GFExt e{p};
    ext_field_self_check(e);
    Fq xi = e.xi();
    CHECK(xi.pow(p) == xi + e.one());
    // (xi + c)^p = xi + c + 1
    for (int64_t c = 0; c < int64_t(p); ++c) {
      Fq y = xi + e.make(c);
      CHECK(y.pow(p) == y + e.one());
      CHECK(y.frobenius() == y.pow(p));
    }
    // field axioms on a few elements
    Fq a = xi * xi + e.make(3);
    Fq b = xi.pow(4) + e.make(2) * xi;
    CHECK((a * b) == (b * a));
    CHECK((a * (b + a)) == (a * b + a * a));
    CHECK((a * a.inv()) == e.one());
    CHECK((b / b) == e.one());
    // multiplicative order divides p^p - 1, spot check via pow identity
    CHECK(a.pow(p).pow(p) == a.frobenius().frobenius());
  }
}

TEST_CASE("embedding of the prime field is a ring map") {
  GF f(5);
  GFExt e{5};
  for (int64_t a = 0; a < 5; ++a)
    for (int64_t b = 0; b < 5; ++b) {
      CHECK(e.embed(f.make(a)) + e.embed(f.make(b)) == e.embed(f.make(a + b)));
      CHECK(e.embed(f.make(a)) * e.embed(f.make(b)) == e.embed(f.make(a * b)));
    }
  CHECK(e.embed(f.make(3)).is_scalar());
  CHECK_FALSE(e.xi().is_scalar());
}

TEST_CASE("dense rref, rank, kernel, solve, inverse") {
  GF f(7);
  Matrix<Fp> m(f, 3, 4);
  // rows: [1 2 3 4], [2 4 6 1], [0 0 1 1]
  int64_t vals[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 2}, {0, 0, 1, 1}};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 4; ++j) m.at(i, j) = f.make(vals[i][j]);
  CHECK(rank(m) == 3);

  auto ker = kernel_basis(m);
  CHECK(ker.size() == 1);
  for (const auto& v : ker) CHECK(m.apply(v) == std::vector<Fp>(3, f.zero()));

  Matrix<Fp> id = Matrix<Fp>::identity(f, 4);
  CHECK(rank(id) == 4);
  CHECK(kernel_basis(id).empty());
  Matrix<Fp> z(f, 2, 3);
  CHECK(rank(z) == 0);
  CHECK(kernel_basis(z).size() == 3);

  // solve a consistent and an inconsistent system
  std::vector<Fp> b{f.make(1), f.make(2), f.make(3)};
  auto x = solve(m, b);
  REQUIRE(x.has_value());
  CHECK(m.apply(*x) == b);
  Matrix<Fp> bad(f, 2, 1);
  bad.at(0, 0) = f.one();
  bad.at(1, 0) = f.one();
  CHECK_FALSE(solve(bad, std::vector<Fp>{f.make(1), f.make(2)}).has_value());

  Matrix<Fp> s(f, 2, 2);
  s.at(0, 0) = f.make(1);
  s.at(0, 1) = f.make(2);
  s.at(1, 0) = f.make(3);
  s.at(1, 1) = f.make(4);
  auto si = inverse(s);
  REQUIRE(si.has_value());
  CHECK((*si * s) == Matrix<Fp>::identity(f, 2));
  CHECK((s * *si) == Matrix<Fp>::identity(f, 2));
  Matrix<Fp> sing(f, 2, 2);
  sing.at(0, 0) = f.make(1);
  sing.at(0, 1) = f.make(2);
  sing.at(1, 0) = f.make(2);
  sing.at(1, 1) = f.make(4);
  CHECK_FALSE(inverse(sing).has_value());
  CHECK(rank(sing) == 1);
}

TEST_CASE("matrix algebra identities") {
  GF f(11);
  Matrix<Fp> a(f, 2, 2), b(f, 2, 2);
  a.at(0, 0) = f.make(1);
  a.at(0, 1) = f.make(5);
  a.at(1, 0) = f.make(2);
  a.at(1, 1) = f.make(3);
  b.at(0, 0) = f.make(4);
  b.at(0, 1) = f.make(1);
  b.at(1, 0) = f.make(0);
  b.at(1, 1) = f.make(7);
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
  CHECK(a.pow(0) == Matrix<Fp>::identity(f, 2));
  CHECK(a.pow(3) == a * a * a);
  CHECK((a + b) - b == a);
  CHECK((a * f.make(3)) == a + a + a);
}

TEST_CASE("sparse echelon agrees with dense kernel") {
  GF f(13);
  // random-ish but fixed 6x9 system
  Matrix<Fp> m(f, 6, 9);
  int64_t seed = 37;
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 9; ++j) {
      seed = (seed * 1103515245 + 12345) % 2147483647;
      if (seed % 3 == 0) m.at(i, j) = f.make(seed % 13);
    }
  SparseEchelon<Fp> se(f, 9);
  for (size_t i = 0; i < 6; ++i) {
    SparseEchelon<Fp>::Row r;
    for (size_t j = 0; j < 9; ++j)
      if (!m.at(i, j).is_zero()) r.emplace_back(uint32_t(j), m.at(i, j));
    se.add(std::move(r));
  }
  CHECK(se.rank() == rank(m));
  auto ker = se.kernel();
  CHECK(ker.size() == kernel_basis(m).size());
  for (const auto& v : ker) CHECK(m.apply(v) == std::vector<Fp>(6, f.zero()));
  // kernel vectors are independent
  CHECK(span_rank<Fp>(f, ker) == ker.size());

  // duplicate and dependent rows do not change the rank
  SparseEchelon<Fp> se2(f, 9);
  for (int rep = 0; rep < 3; ++rep)
    for (size_t i = 0; i < 6; ++i) {
      SparseEchelon<Fp>::Row r;
      for (size_t j = 0; j < 9; ++j)
        if (!m.at(i, j).is_zero()) r.emplace_back(uint32_t(j), m.at(i, j));
      se2.add(std::move(r));
    }
  CHECK(se2.rank() == rank(m));
}

TEST_CASE("sparse echelon over the extension field") {
  GFExt e{5};
  SparseEchelon<Fq> se(e, 3);
  // rows: [xi, 1, 0], [xi^2, xi, 0], [0, 0, xi+1]  -> rank 3? second = xi*first, so rank 2
  se.add({{0, e.xi()}, {1, e.one()}});
  se.add({{0, e.xi() * e.xi()}, {1, e.xi()}});
  se.add({{2, e.xi() + e.one()}});
  CHECK(se.rank() == 2);
  auto ker = se.kernel();
  REQUIRE(ker.size() == 1);
  // kernel vector satisfies xi*x0 + x1 = 0
  CHECK((e.xi() * ker[0][0] + ker[0][1]).is_zero());
  CHECK(ker[0][2].is_zero());
}
