#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "relsmooth/groebner.hpp"

using namespace relsmooth;

namespace {

using QR = PolyRing<RationalField>;
using QP = Poly<RationalField>;

// Definition check, no shortcuts: every S-polynomial reduces to zero.
template <ExactField F>
bool is_groebner_basis(const PolyRing<F>& R, const std::vector<Poly<F>>& G) {
  for (size_t i = 0; i < G.size(); ++i)
    for (size_t j = i + 1; j < G.size(); ++j)
      if (!normal_form(R, spoly(R, G[i], G[j]), G).is_zero()) return false;
  return true;
}

template <ExactField F>
bool fully_reduced(const PolyRing<F>& R, const std::vector<Poly<F>>& G) {
  for (size_t i = 0; i < G.size(); ++i) {
    if (!R.field().eq(R.lc(G[i]), R.field().one())) return false;
    for (size_t j = 0; j < G.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : G[i].t)
        if (mono_divides(R.lm(G[j]), t.m)) return false;
    }
  }
  return true;
}

QP rand_poly(const QR& R, std::mt19937& rng, int terms, unsigned maxdeg) {
  std::uniform_int_distribution<long> coef(-4, 4);
  std::uniform_int_distribution<unsigned> ex(0, maxdeg);
  std::vector<Term<RationalField>> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m = mono_one(R.nvars());
    for (size_t j = 0; j < R.nvars(); ++j) m.e[j] = ex(rng);
    ts.push_back({m, R.field().from_int(coef(rng))});
  }
  return R.from_terms(std::move(ts));
}

}  // namespace

TEST_CASE("worked example in lex order") {
  RationalField q;
  QR R(q, {"x", "y"}, MonomialOrder::lex());
  auto x = R.var(0), y = R.var(1);

  // I = (x^2 - 1, x*y - 1); reduced lex basis is {y^2 - 1, x - y}
  std::vector<QP> gens = {R.sub(R.mul(x, x), R.one()),
                          R.sub(R.mul(x, y), R.one())};
  auto gb = groebner(R, gens);
  REQUIRE(gb.size() == 2);
  CHECK(R.str(gb[0]) == "y^2 - 1");
  CHECK(R.str(gb[1]) == "x - y");
  CHECK(is_groebner_basis(R, gb));
  CHECK(fully_reduced(R, gb));

  CHECK(ideal_member(R, R.sub(R.mul(R.mul(x, x), y), y), gb));  // x^2y - y
  CHECK_FALSE(ideal_member(R, x, gb));
}

TEST_CASE("cyclic-3 reduced basis (grevlex)") {
  RationalField q;
  QR R(q, {"x", "y", "z"});
  auto x = R.var(0), y = R.var(1), z = R.var(2);

  std::vector<QP> gens = {
      R.add(R.add(x, y), z),
      R.add(R.add(R.mul(x, y), R.mul(y, z)), R.mul(z, x)),
      R.sub(R.mul(R.mul(x, y), z), R.one())};
  auto gb = groebner(R, gens);
  REQUIRE(gb.size() == 3);
  CHECK(R.str(gb[0]) == "x + y + z");
  CHECK(R.str(gb[1]) == "y^2 + y*z + z^2");
  CHECK(R.str(gb[2]) == "z^3 - 1");
  CHECK(is_groebner_basis(R, gb));
  CHECK(fully_reduced(R, gb));
}

TEST_CASE("normal form properties") {
  RationalField q;
  QR R(q, {"x", "y", "z"});
  std::mt19937 rng(33);

  std::vector<QP> gens = {rand_poly(R, rng, 3, 2), rand_poly(R, rng, 3, 2)};
  auto gb = groebner(R, gens);
  for (int i = 0; i < 25; ++i) {
    auto p = rand_poly(R, rng, 5, 3);
    auto r = normal_form(R, p, gb);
    // idempotent
    CHECK(R.eq(normal_form(R, r, gb), r));
    // p - NF(p) lies in the ideal
    CHECK(ideal_member(R, R.sub(p, r), gb));
    // no term of the remainder is reducible
    for (const auto& t : r.t)
      for (const auto& g : gb) CHECK_FALSE(mono_divides(R.lm(g), t.m));
    // linearity
    auto p2 = rand_poly(R, rng, 4, 3);
    CHECK(R.eq(normal_form(R, R.add(p, p2), gb),
               R.add(r, normal_form(R, p2, gb))));
  }
}

TEST_CASE("random ideals: criteria agree with the definition") {
  RationalField q;
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 15; ++trial) {
    QR R(q, {"x", "y", "z"});
    std::vector<QP> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(rand_poly(R, rng, 3, 2));
    auto gb = groebner(R, gens);
    CHECK(is_groebner_basis(R, gb));
    CHECK(fully_reduced(R, gb));
    // original generators reduce to zero
    for (const auto& g : gens) CHECK(ideal_member(R, g, gb));
  }
}

TEST_CASE("groebner over a prime field") {
  PrimeField f7(7);
  PolyRing<PrimeField> R(f7, {"x", "y", "z"});
  auto x = R.var(0), y = R.var(1), z = R.var(2);
  std::vector<Poly<PrimeField>> gens = {
      R.add(R.add(x, y), z),
      R.add(R.add(R.mul(x, y), R.mul(y, z)), R.mul(z, x)),
      R.sub(R.mul(R.mul(x, y), z), R.one())};
  auto gb = groebner(R, gens);
  REQUIRE(gb.size() == 3);
  CHECK(R.str(gb[2]) == "z^3 + 6");  // -1 = 6 mod 7
  for (size_t i = 0; i < gb.size(); ++i)
    for (size_t j = i + 1; j < gb.size(); ++j)
      CHECK(normal_form(R, spoly(R, gb[i], gb[j]), gb).is_zero());
}

TEST_CASE("unit and zero ideals") {
  RationalField q;
  QR R(q, {"x", "y"});
  auto x = R.var(0);

  auto unit = groebner(R, {x, R.sub(x, R.one())});  // x and x-1 => 1
  CHECK(is_unit_ideal(R, unit));
  CHECK(krull_dim(R, unit).is_minus_infinity());

  auto zero = groebner(R, {R.zero()});
  CHECK(is_zero_ideal(zero));
  CHECK(krull_dim(R, zero) == ExtendedNat::finite(2));
}

TEST_CASE("krull dimension table") {
  RationalField q;

  QR R2(q, {"x", "y"});
  auto x = R2.var(0), y = R2.var(1);
  CHECK(krull_dim(R2, groebner(R2, {R2.mul(x, y)})) == ExtendedNat::finite(1));
  CHECK(krull_dim(R2, groebner(R2, {x})) == ExtendedNat::finite(1));
  CHECK(krull_dim(R2, groebner(R2, {x, y})) == ExtendedNat::finite(0));

  // cusp: dim k[t,y]/(y^2 - t^3) = 1
  QR Rc(q, {"t", "y"});
  auto t = Rc.var(0), yy = Rc.var(1);
  CHECK(krull_dim(Rc, groebner(Rc, {Rc.sub(Rc.mul(yy, yy), Rc.pow(t, 3))})) ==
        ExtendedNat::finite(1));

  // two components of different dimension: V(xy, xz) in k[x,y,z]
  QR R3(q, {"x", "y", "z"});
  auto x3 = R3.var(0), y3 = R3.var(1), z3 = R3.var(2);
  CHECK(krull_dim(R3, groebner(R3, {R3.mul(x3, y3), R3.mul(x3, z3)})) ==
        ExtendedNat::finite(2));

  // zero-variable ring
  QR R0(q, {});
  CHECK(krull_dim(R0, groebner(R0, {})) == ExtendedNat::finite(0));
  CHECK(krull_dim(R0, groebner(R0, {R0.one()})).is_minus_infinity());
}

TEST_CASE("elimination") {
  RationalField q;
  QR R(q, {"x", "y"});
  auto x = R.var(0), y = R.var(1);

  // I = (x^2 + y^2 - 1, x - y); I ∩ k[y] = (y^2 - 1/2)
  std::vector<QP> gens = {
      R.sub(R.add(R.mul(x, x), R.mul(y, y)), R.one()), R.sub(x, y)};
  auto [Ry, gby] = eliminate_prefix(R, gens, 1);
  REQUIRE(Ry.nvars() == 1);
  REQUIRE(gby.size() == 1);
  CHECK(Ry.str(gby[0]) == "y^2 - 1/2");

  // twisted cubic: eliminate t from (x - t^2, y - t^3)
  QR Rt(q, {"t", "x", "y"});
  auto tt = Rt.var(0), tx = Rt.var(1), ty = Rt.var(2);
  std::vector<QP> param = {Rt.sub(tx, Rt.pow(tt, 2)), Rt.sub(ty, Rt.pow(tt, 3))};
  auto [Rxy, gbxy] = eliminate_prefix(Rt, param, 1);
  REQUIRE(gbxy.size() == 1);
  CHECK(Rxy.str(gbxy[0]) == "x^3 - y^2");

  // eliminating by name/index from the middle
  QR R3(q, {"a", "b", "c"});
  auto a = R3.var(0), b = R3.var(1), c = R3.var(2);
  std::vector<QP> g3 = {R3.sub(b, R3.mul(a, a)), R3.sub(c, R3.mul(a, b))};
  auto [Rac, gbac] = eliminate_vars(R3, g3, {1});  // drop b
  REQUIRE(Rac.nvars() == 2);
  CHECK(Rac.vars() == std::vector<std::string>{"a", "c"});
  REQUIRE(gbac.size() == 1);
  CHECK(Rac.str(gbac[0]) == "a^3 - c");

  // soundness: eliminated generators belong to the original ideal
  auto gb_full = groebner(Rt, param);
  for (const auto& g : gbxy) {
    auto back = transfer(Rxy, g, Rt);
    CHECK(ideal_member(Rt, back, gb_full));
  }
}

TEST_CASE("saturation") {
  RationalField q;
  QR R(q, {"x", "y"});
  auto x = R.var(0), y = R.var(1);

  // (x^2 y) : x^∞ = (y)
  auto sat = saturate(R, {R.mul(R.mul(x, x), y)}, x);
  REQUIRE(sat.size() == 1);
  CHECK(R.str(sat[0]) == "y");

  // (xy, y^2) : y^∞ is everything (y^2 is already a generator)
  auto sat2 = saturate(R, {R.mul(x, y), R.mul(y, y)}, y);
  CHECK(is_unit_ideal(R, sat2));

  // (xy, x^2) : y^∞ = (x)
  auto sat2b = saturate(R, {R.mul(x, y), R.mul(x, x)}, y);
  CHECK(ideal_eq(R, sat2b, groebner(R, {x})));

  // saturating by a unit leaves the ideal alone
  auto i3 = groebner(R, {R.sub(R.mul(x, y), R.one())});
  auto sat3 = saturate(R, i3, R.constant(q.from_int(5)));
  CHECK(ideal_eq(R, sat3, i3));

  // component separation: (x*y) : x^∞ = (y) kills the x-axis component
  auto sat4 = saturate(R, {R.mul(x, y)}, x);
  REQUIRE(sat4.size() == 1);
  CHECK(R.str(sat4[0]) == "y");
}

TEST_CASE("budgets") {
  RationalField q;
  QR R(q, {"x", "y", "z"});
  auto x = R.var(0), y = R.var(1), z = R.var(2);
  std::vector<QP> gens = {
      R.add(R.add(x, y), z),
      R.add(R.add(R.mul(x, y), R.mul(y, z)), R.mul(z, x)),
      R.sub(R.mul(R.mul(x, y), z), R.one())};

  Budget tight_pairs{1, 200};
  CHECK_THROWS_AS(groebner(R, gens, tight_pairs), BudgetExhausted);
  Budget tight_deg{200000, 2};
  CHECK_THROWS_AS(groebner(R, gens, tight_deg), BudgetExhausted);
  CHECK_THROWS_WITH(groebner(R, gens, tight_pairs),
                    Catch::Matchers::ContainsSubstring("pair budget"));
}

TEST_CASE("determinism: identical reruns") {
  RationalField q;
  std::mt19937 rng(808);
  QR R(q, {"x", "y", "z"});
  std::vector<QP> gens;
  for (int i = 0; i < 3; ++i) gens.push_back(rand_poly(R, rng, 4, 3));

  auto dump = [&](const std::vector<QP>& gb) {
    std::string s;
    for (const auto& g : gb) s += R.str(g) + ";";
    return s;
  };
  CHECK(dump(groebner(R, gens)) == dump(groebner(R, gens)));
}
