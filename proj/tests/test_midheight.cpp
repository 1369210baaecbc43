// Middle-height analysis (1 < r < p-1): the unique simple pair S and L built
// by PBW induction, the radical of the alternating form beta_chi, cocycle
// self-extension groups on both windows, the closed-form dimension checks,
// and the top-height (r = p-1) centralizer classification.
#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "wq/midheight.hpp"

using namespace wq;

namespace {

std::vector<std::vector<uint32_t>> rows(std::initializer_list<std::vector<uint32_t>> r) {
  return std::vector<std::vector<uint32_t>>(r);
}

}  // namespace

TEST_CASE("induction from b+ rebuilds the Verma matrices entrywise") {
  for (uint32_t p : {5u, 7u, 11u}) {
    Witt w(p);
    const GF& f = w.f;
    for (uint32_t lam = 0; lam < p; ++lam) {
      Rep<Fp> z = verma(w, f.make(lam));
      Rep<Fp> ind = induce_from_b<Fp>(f, w, f.make(lam), Character(f), "ind");
      REQUIRE(ind.dim == z.dim);
      for (int i = -1; i <= z.hi(); ++i) CHECK(ind.rho(i) == z.rho(i));
    }
  }
}

TEST_CASE("default mid-height character") {
  Witt w(5);
  const GF& f = w.f;
  Character c2 = default_midheight_character(f, 2);
  CHECK(c2.height() == 2);
  CHECK(c2 == Character::representative(f, 2));
  Character c3 = default_midheight_character(f, 3);
  CHECK(c3.height() == 3);
  CHECK(c3(2).val() == 1);
  CHECK_THROWS_WITH_AS(default_midheight_character(f, 1),
                       doctest::Contains("strictly between"), error);
  CHECK_THROWS_WITH_AS(default_midheight_character(f, 4),
                       doctest::Contains("strictly between"), error);
}

TEST_CASE("mid-height analysis at p=5, height 2") {
  Witt w(5);
  Character chi = default_midheight_character(w.f, 2);
  MidHeightReport rep = analyze_midheight(w, chi);

  CHECK(rep.p == 5);
  CHECK(rep.r == 2);
  CHECK(rep.s == 1);
  CHECK(rep.dim_S == 5);
  CHECK(rep.dim_L == 25);
  // radical of beta_chi is the graded piece g_2 = <e_2, e_3>
  CHECK(rep.rad_basis == rows({{0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}}));
  CHECK(rep.rad_is_ideal);
  CHECK(rep.chi_vanishes_on_rad);
  CHECK(rep.dim_u_quotient == 25);
  CHECK(rep.quotient_dim_identity);  // 5^(4-2) == (dim S)^2 == 25
  CHECK(rep.g_r_abelianization_dim == 2);
  CHECK(rep.rad_h1_dim == 2);
  CHECK(rep.ext_SS == 2);
  CHECK(rep.ext_LL == 1);
  CHECK(rep.S_is_simple == true);
  CHECK(rep.L_is_simple == true);
  CHECK(rep.s_rad_invariant == true);
  CHECK(rep.lower_bound_holds == true);
  CHECK(rep.even_formula_match == true);  // ext_SS == dim(g_2/[g_2,g_2])
  CHECK(rep.even_bound_equality == "consistent");  // ext_LL == ext_SS - 1
  CHECK(rep.caveat.empty());

  nlohmann::json j = rep.to_json();
  CHECK(j["ext_SS"] == 2);
  CHECK(j["ext_LL"] == 1);
  CHECK(j["rad_h1_dim"] == 2);
  CHECK(j["even_bound_equality"] == "consistent");
  CHECK(j["rad_basis"].size() == 2);
}

TEST_CASE("mid-height analysis at p=5, height 3, standard character") {
  Witt w(5);
  Character chi = default_midheight_character(w.f, 3);  // chi(e_2) = 1
  MidHeightReport rep = analyze_midheight(w, chi);

  CHECK(rep.r == 3);
  CHECK(rep.s == 1);
  CHECK(rep.dim_S == 5);
  CHECK(rep.dim_L == 25);
  // the radical is <e_1, e_3>: a 2-dimensional abelian ideal killed by chi,
  // with trivial p-map, so H^1(u(rad), k) is the full dual space, dim 2
  CHECK(rep.rad_basis == rows({{0, 0, 1, 0, 0}, {0, 0, 0, 0, 1}}));
  CHECK(rep.rad_is_ideal);
  CHECK(rep.chi_vanishes_on_rad);
  CHECK(rep.rad_h1_dim == 2);
  // the cocycle solver agrees with that radical description (confirmed
  // independently by an eigenbasis hand computation: Z = 26, inner = 24)
  CHECK(rep.ext_SS == 2);
  CHECK(rep.ext_LL == 1);
  CHECK(rep.S_is_simple == true);
  CHECK(rep.L_is_simple == true);
  CHECK(rep.s_rad_invariant == true);
  CHECK(rep.dim_u_quotient == 25);
  CHECK(rep.quotient_dim_identity);
  // the lower bound ext_LL >= ext_SS - 1 holds with equality here
  CHECK(rep.lower_bound_holds == true);
  CHECK(*rep.ext_LL == *rep.ext_SS - 1);
  CHECK(!rep.even_formula_match.has_value());
  CHECK(rep.even_bound_equality.empty());
  CHECK(!rep.caveat.empty());
}

TEST_CASE("mid-height analysis at p=5, height 3, radical not an ideal") {
  Witt w(5);
  Character chi(w.f);
  chi.set(1, w.f.one());
  chi.set(2, w.f.one());
  MidHeightReport rep = analyze_midheight(w, chi);

  CHECK(rep.r == 3);
  // rad = <3 e_1 + e_2, e_3> is not bracket-invariant under e_0, and chi is
  // nonzero on it, so the ideal-based descriptions do not apply
  CHECK(rep.rad_basis == rows({{0, 0, 3, 1, 0}, {0, 0, 0, 0, 1}}));
  CHECK(!rep.rad_is_ideal);
  CHECK(!rep.chi_vanishes_on_rad);
  CHECK(!rep.rad_h1_dim.has_value());
  CHECK(rep.s_rad_invariant == false);
  // the raw dimension bookkeeping still holds: 5^(4-2) == 25 == (dim S)^2
  CHECK(rep.quotient_dim_identity);
  CHECK(rep.ext_SS == 2);
  CHECK(rep.ext_LL == 1);
  CHECK(rep.S_is_simple == true);
  CHECK(rep.lower_bound_holds == true);

  nlohmann::json j = rep.to_json();
  CHECK(j["rad_h1_dim"] == "skipped");
  CHECK(j["rad_is_ideal"] == false);
}

TEST_CASE("mid-height skip markers under a small cap") {
  Witt w(5);
  Character chi = default_midheight_character(w.f, 2);
  MidHeightReport rep = analyze_midheight(w, chi, 50);

  // structural fields are still computed ...
  CHECK(rep.rad_basis.size() == 2);
  CHECK(rep.rad_is_ideal);
  CHECK(rep.quotient_dim_identity);
  CHECK(rep.g_r_abelianization_dim == 2);
  CHECK(rep.rad_h1_dim == 2);
  // ... while everything requiring the modules is marked skipped
  CHECK(!rep.ext_SS.has_value());
  CHECK(!rep.ext_LL.has_value());
  CHECK(!rep.S_is_simple.has_value());
  CHECK(!rep.L_is_simple.has_value());
  CHECK(!rep.s_rad_invariant.has_value());
  CHECK(!rep.lower_bound_holds.has_value());
  CHECK(!rep.even_formula_match.has_value());
  CHECK(rep.even_bound_equality == "skipped");

  nlohmann::json j = rep.to_json();
  CHECK(j["ext_SS"] == "skipped");
  CHECK(j["ext_LL"] == "skipped");
  CHECK(j["even_bound_equality"] == "skipped");
}

TEST_CASE("mid-height analysis at p=7, height 2: equality guess fails") {
  // The even-height closed form ext_SS = dim(g_r/[g_r,g_r]) holds, but the
  // guessed equality ext_LL = ext_SS - 1 does not persist beyond p=5: here
  // both self-extension groups are 3-dimensional.
  Witt w(7);
  Character chi = default_midheight_character(w.f, 2);
  MidHeightReport rep = analyze_midheight(w, chi);

  CHECK(rep.dim_S == 7);
  CHECK(rep.dim_L == 49);
  CHECK(rep.rad_basis.size() == 4);  // g_2 = <e_2..e_5>
  CHECK(rep.rad_is_ideal);
  CHECK(rep.g_r_abelianization_dim == 3);  // [g_2, g_2] = <e_5>
  CHECK(rep.rad_h1_dim == 3);
  CHECK(rep.ext_SS == 3);
  CHECK(rep.ext_LL == 3);
  CHECK(rep.S_is_simple == true);
  CHECK(rep.even_formula_match == true);
  CHECK(rep.lower_bound_holds == true);  // 3 >= 3 - 1
  CHECK(rep.even_bound_equality == "inconsistent");
  CHECK(rep.quotient_dim_identity);  // 7^(6-4) == 49 == (dim S)^2
}

TEST_CASE("mid-height analysis at p=7, height 3, structure under a small cap") {
  Witt w(7);
  Character chi = default_midheight_character(w.f, 3);  // chi(e_2) = 1
  MidHeightReport rep = analyze_midheight(w, chi, 2000);

  CHECK(rep.s == 1);
  CHECK(rep.dim_S == 7);
  // rad = <e_1, e_3, e_4, e_5>, an ideal; [rad, rad] = <e_4, e_5> leaves a
  // 2-dimensional H^1
  CHECK(rep.rad_basis == rows({{0, 0, 1, 0, 0, 0, 0},
                               {0, 0, 0, 0, 1, 0, 0},
                               {0, 0, 0, 0, 0, 1, 0},
                               {0, 0, 0, 0, 0, 0, 1}}));
  CHECK(rep.rad_is_ideal);
  CHECK(rep.chi_vanishes_on_rad);
  CHECK(rep.rad_h1_dim == 2);
  // the S-window system (6*49 unknowns) fits under the small cap
  CHECK(rep.ext_SS == 2);
  CHECK(rep.s_rad_invariant == true);
  // the L-window system (7*49^2 unknowns) does not
  CHECK(!rep.ext_LL.has_value());
  CHECK(!rep.lower_bound_holds.has_value());
  CHECK(rep.quotient_dim_identity);  // 7^(6-4) == 49 == (dim S)^2
}

TEST_CASE("mid-height analysis at p=7, height 4: ext_LL skipped at default cap") {
  Witt w(7);
  Character chi = default_midheight_character(w.f, 4);  // chi(e_3) = 1
  MidHeightReport rep = analyze_midheight(w, chi);

  CHECK(rep.s == 2);
  CHECK(rep.dim_S == 49);
  CHECK(rep.dim_L == 343);
  // rad = g_4 = <e_4, e_5>, abelian, so the closed form gives 2
  CHECK(rep.rad_basis == rows({{0, 0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 1}}));
  CHECK(rep.rad_is_ideal);
  CHECK(rep.g_r_abelianization_dim == 2);
  CHECK(rep.rad_h1_dim == 2);
  // the S-window system has 6*49^2 = 14406 unknowns: still under the cap
  CHECK(rep.ext_SS == 2);
  CHECK(rep.even_formula_match == true);
  CHECK(rep.s_rad_invariant == true);
  // dim 49 is past both simplicity certificates: reported as unchecked
  CHECK(!rep.S_is_simple.has_value());
  // the L-window system would need 7*343^2 = 823543 unknowns: skipped
  CHECK(!rep.ext_LL.has_value());
  CHECK(rep.even_bound_equality == "skipped");
  CHECK(rep.quotient_dim_identity);  // 7^(6-2) == 2401 == 49^2

  nlohmann::json j = rep.to_json();
  CHECK(j["ext_SS"] == 2);
  CHECK(j["ext_LL"] == "skipped");
}

TEST_CASE("mid-height analysis at p=7, height 5, structure under a small cap") {
  Witt w(7);
  Character chi = default_midheight_character(w.f, 5);  // chi(e_4) = 1
  MidHeightReport rep = analyze_midheight(w, chi, 2000);

  CHECK(rep.s == 2);
  // pairing i+j=4 couples e_0<->e_4 and e_1<->e_3, leaving rad = <e_2, e_5>,
  // which e_1 moves out of itself: not an ideal
  CHECK(rep.rad_basis == rows({{0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 1}}));
  CHECK(!rep.rad_is_ideal);
  CHECK(rep.chi_vanishes_on_rad);
  CHECK(rep.rad_h1_dim == 2);
  CHECK(rep.g_r_abelianization_dim == 1);
  CHECK(rep.quotient_dim_identity);
  CHECK(!rep.ext_SS.has_value());
  CHECK(!rep.caveat.empty());
}

TEST_CASE("mid-height preconditions") {
  Witt w(5);
  const GF& f = w.f;
  Character h0(f);
  h0.set(-1, f.one());
  CHECK_THROWS_WITH_AS(analyze_midheight(w, h0), doctest::Contains("strictly between"), error);
  Character h1(f);
  h1.set(0, f.one());
  CHECK_THROWS_WITH_AS(analyze_midheight(w, h1), doctest::Contains("strictly between"), error);
  Character top(f);
  top.set(3, f.one());
  CHECK_THROWS_WITH_AS(analyze_midheight(w, top), doctest::Contains("strictly between"), error);
  CHECK_THROWS_WITH_AS(analyze_midheight(w, Character(f)),
                       doctest::Contains("strictly between"), error);
}

TEST_CASE("induction validates its one-dimensional input module") {
  Witt w(5);
  const GF& f = w.f;
  Character chi = default_midheight_character(f, 2);
  // psi must vanish on the derived subalgebra of g_1 (spanned by e_3)
  {
    std::map<int, Fp> psi{{1, f.make(1)}, {2, f.one()}, {3, f.one()}};
    CHECK_THROWS_WITH_AS((Induction<Fp>(f, w, 0, 1, psi, chi)),
                         doctest::Contains("derived subalgebra"), error);
  }
  // psi(e_1)^p must match chi(e_1)^p
  {
    std::map<int, Fp> psi{{1, f.make(1)}, {2, f.one()}};
    CHECK_THROWS_WITH_AS((Induction<Fp>(f, w, 0, 1, psi, chi)),
                         doctest::Contains("not a u(g_t"), error);
  }
}

TEST_CASE("S is simple across computed mid heights") {
  for (auto [p, r] : std::vector<std::pair<uint32_t, int>>{{5, 2}, {5, 3}, {7, 2}, {7, 3}}) {
    Witt w(p);
    Character chi = default_midheight_character(w.f, r);
    Rep<Fp> S = midheight_S(w, chi);
    S.validate();
    CHECK(S.dim == w.p);
    CHECK(is_simple(S) == true);
  }
}

TEST_CASE("simplicity certificate on known modules") {
  Witt w(5);
  const GF& f = w.f;
  // restricted Vermas: Z(lambda) is simple iff lambda != 0, p-1
  CHECK(is_simple(verma(w, f.make(1))) == true);
  CHECK(is_simple(verma(w, f.make(0))) == false);
  CHECK(is_simple(verma(w, f.make(4))) == false);
  CHECK(is_simple(simple_restricted(w, f.make(0))) == true);  // trivial module
  CHECK(is_simple(simple_restricted(w, f.make(4))) == true);
}

TEST_CASE("top-height classification at p=5") {
  Witt w(5);
  const GF& f = w.f;

  SUBCASE("chi(e_3) = 1: p-nilpotent centralizer") {
    Character chi(f);
    chi.set(3, f.one());
    TopHeightReport t = classify_height_pm1(w, chi);
    CHECK(t.p == 5);
    CHECK(t.chi == std::vector<uint32_t>{0, 0, 0, 0, 1});
    CHECK(t.centralizer_basis == rows({{1, 0, 0, 0, 0}}));  // <e_-1>
    CHECK(t.structure.cls == SubalgebraClass::p_nilpotent);
    CHECK(t.structure.abelian);
    CHECK(t.structure.p_closed);
    REQUIRE(t.quiver.has_value());
    CHECK(t.quiver->nodes == std::vector<std::string>{"L"});
    CHECK(t.quiver->mult(0, 0) == 1);
    CHECK(t.quiver->edge_count() == 1);
    CHECK(t.quiver->chi == t.chi);
    CHECK(t.note.find("uniserial") != std::string::npos);

    nlohmann::json j = t.to_json();
    CHECK(j["class"] == "p-nilpotent");
    CHECK(j["quiver"]["edges"].size() == 1);
  }

  SUBCASE("chi(e_1) = chi(e_3) = 1: toral centralizer") {
    Character chi(f);
    chi.set(1, f.one());
    chi.set(3, f.one());
    TopHeightReport t = classify_height_pm1(w, chi);
    CHECK(t.centralizer_basis == rows({{1, 0, 2, 0, 1}}));  // <e_-1 + 2e_1 + e_3>
    CHECK(t.structure.cls == SubalgebraClass::torus);
    REQUIRE(t.quiver.has_value());
    CHECK(t.quiver->edge_count() == 0);
    CHECK(t.quiver->chi == std::vector<uint32_t>{0, 0, 1, 0, 1});
    CHECK(t.note.find("semisimple") != std::string::npos);

    nlohmann::json j = t.to_json();
    CHECK(j["class"] == "torus");
    CHECK(j["quiver"]["edges"].empty());
  }
}

TEST_CASE("top-height classification at p=7") {
  Witt w(7);
  Character chi(w.f);
  chi.set(5, w.f.one());
  TopHeightReport t = classify_height_pm1(w, chi);
  // every graded basis element pairs under i+j=5 except e_-1
  CHECK(t.centralizer_basis == rows({{1, 0, 0, 0, 0, 0, 0}}));
  CHECK(t.structure.cls == SubalgebraClass::p_nilpotent);
  REQUIRE(t.quiver.has_value());
  CHECK(t.quiver->mult(0, 0) == 1);
}

TEST_CASE("top-height precondition") {
  Witt w(5);
  Character chi = default_midheight_character(w.f, 2);
  CHECK_THROWS_WITH_AS(classify_height_pm1(w, chi), doctest::Contains("p-1"), error);
  CHECK_THROWS_WITH_AS(classify_height_pm1(w, Character(w.f)),
                       doctest::Contains("p-1"), error);
}
