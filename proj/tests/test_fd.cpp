#include <catch2/catch_amalgamated.hpp>

#include "relsmooth/fd.hpp"

using namespace relsmooth;
using Catch::Matchers::ContainsSubstring;

namespace {

using Q = RationalField;
using QR = PolyRing<Q>;
using QP = Poly<Q>;
using QA = Algebra<Q>;
using QC = AlgebraComponent<Q>;

Q q;

QA dual_algebra() {  // Q[x]/(x^2)
  QR R(q, {"x"});
  return QA::make(q, {QC(R, {R.mul(R.var(0), R.var(0))})});
}

QA qx3_algebra() {  // Q[x]/(x^3)
  QR R(q, {"x"});
  return QA::make(q, {QC(R, {R.mul(R.var(0), R.mul(R.var(0), R.var(0)))})});
}

QA qx2m1_algebra() {  // Q[x]/(x^2 - 1)
  QR R(q, {"x"});
  return QA::make(q, {QC(R, {R.sub(R.mul(R.var(0), R.var(0)), R.one())})});
}

QA qq_algebra() {  // Q x Q
  QR R(q, {"x"});
  return QA::make(q, {QC(R, {R.var(0)}), QC(R, {R.var(0)})});
}

FDSubalgebra<Q> trivial_sub(const FDAlgebra<Q>& A) {
  return FDSubalgebra<Q>(A, {});
}

FDSubalgebra<Q> full_sub(const FDAlgebra<Q>& A) {
  std::vector<std::vector<mpq_class>> gens;
  for (size_t i = 0; i < A.dim(); ++i) gens.push_back(A.basis(i));
  return FDSubalgebra<Q>(A, gens);
}

bool mat_is_zero(const Q& f, const Matrix<Q>& M) {
  for (size_t i = 0; i < M.rows(); ++i)
    for (size_t j = 0; j < M.cols(); ++j)
      if (!f.is_zero(M.at(i, j))) return false;
  return true;
}

bool mat_is_identity(const Q& f, const Matrix<Q>& M) {
  return M.rows() == M.cols() && M.eq(f, Matrix<Q>::identity(f, M.rows()));
}

// every structural identity a resolution must satisfy
void check_resolution(const RelResolution<Q>& res) {
  const Q& f = q;
  size_t L = res.length;
  REQUIRE(res.terms.size() == L + 1);
  REQUIRE(res.diff.size() == L + 1);
  REQUIRE(res.homotopy.size() == L + 1);

  REQUIRE(res.diff[0].rows() == res.target.dim());
  REQUIRE(res.diff[0].cols() == res.terms[0].dim());
  REQUIRE(res.homotopy[0].rows() == res.terms[0].dim());
  REQUIRE(res.homotopy[0].cols() == res.target.dim());
  for (size_t i = 1; i <= L; ++i) {
    REQUIRE(res.diff[i].rows() == res.terms[i - 1].dim());
    REQUIRE(res.diff[i].cols() == res.terms[i].dim());
    REQUIRE(res.homotopy[i].rows() == res.terms[i].dim());
    REQUIRE(res.homotopy[i].cols() == res.terms[i - 1].dim());
  }

  // complex: consecutive differentials compose to zero
  for (size_t i = 1; i <= L; ++i)
    CHECK(mat_is_zero(f, mat_mul(f, res.diff[i - 1], res.diff[i])));

  // the differentials are module maps
  for (size_t a = 0; a < res.target.algebra().dim(); ++a) {
    CHECK(mat_mul(f, res.target.action(a), res.diff[0])
              .eq(f, mat_mul(f, res.diff[0], res.terms[0].action(a))));
    for (size_t i = 1; i <= L; ++i)
      CHECK(mat_mul(f, res.terms[i - 1].action(a), res.diff[i])
                .eq(f, mat_mul(f, res.diff[i], res.terms[i].action(a))));
  }

  // exactness: augmentation onto M, then ker = im at each level
  CHECK(rank(f, res.diff[0]) == res.target.dim());
  for (size_t i = 1; i <= L; ++i) {
    size_t kerdim = res.terms[i - 1].dim() - rank(f, res.diff[i - 1]);
    CHECK(kerdim == rank(f, res.diff[i]));
  }
  if (res.terminated && L >= 1)
    CHECK(rank(f, res.diff[L]) == res.terms[L].dim());

  // contracting homotopy identities
  CHECK(mat_is_identity(f, mat_mul(f, res.diff[0], res.homotopy[0])));
  for (size_t j = 0; j + 1 <= L; ++j) {
    Matrix<Q> s = mat_add(f, mat_mul(f, res.diff[j + 1], res.homotopy[j + 1]),
                          mat_mul(f, res.homotopy[j], res.diff[j]));
    CHECK(mat_is_identity(f, s));
  }
  if (res.terminated && L >= 1)
    CHECK(mat_is_identity(f, mat_mul(f, res.homotopy[L], res.diff[L])));
}

}  // namespace

TEST_CASE("fd algebra from a presentation") {
  auto D = fd_from_presentation(dual_algebra());
  REQUIRE(D.algebra.dim() == 2);
  CHECK(D.algebra.labels() == std::vector<std::string>{"1", "x"});
  CHECK(D.algebra.vec_eq(D.algebra.unit(), D.algebra.basis(0)));
  // x * x = 0
  auto xx = D.algebra.mul(D.algebra.basis(1), D.algebra.basis(1));
  CHECK(D.algebra.vec_eq(xx, {q.zero(), q.zero()}));

  auto U = fd_from_presentation(qx2m1_algebra());
  REQUIRE(U.algebra.dim() == 2);
  // x * x = 1
  CHECK(U.algebra.vec_eq(U.algebra.mul(U.algebra.basis(1), U.algebra.basis(1)),
                         U.algebra.basis(0)));

  auto P = fd_from_presentation(qq_algebra());
  REQUIRE(P.algebra.dim() == 2);
  CHECK(P.algebra.labels() == std::vector<std::string>{"#0:1", "#1:1"});
  // orthogonal idempotents summing to 1
  CHECK(P.algebra.vec_eq(P.algebra.mul(P.algebra.basis(0), P.algebra.basis(0)),
                         P.algebra.basis(0)));
  CHECK(P.algebra.vec_eq(P.algebra.mul(P.algebra.basis(0), P.algebra.basis(1)),
                         {q.zero(), q.zero()}));
  CHECK(P.algebra.vec_eq(P.algebra.unit(), {q.one(), q.one()}));

  auto T = fd_from_presentation(qx3_algebra());
  REQUIRE(T.algebra.dim() == 3);
  CHECK(T.algebra.labels() == std::vector<std::string>{"1", "x", "x^2"});

  // positive-dimensional components are rejected
  QR R(q, {"x"});
  CHECK_THROWS_AS(fd_from_presentation(QA::make(q, {QC(R, {})})),
                  std::invalid_argument);
}

TEST_CASE("fd algebra validation catches bad tensors") {
  using Vec = std::vector<mpq_class>;
  Vec e0{q.one(), q.zero()}, e1{q.zero(), q.one()}, z{q.zero(), q.zero()};

  // not commutative
  CHECK_THROWS_AS(FDAlgebra<Q>(q, {"a", "b"}, {{e0, e1}, {e0, z}}, e0),
                  std::invalid_argument);
  // unit fails
  CHECK_THROWS_AS(FDAlgebra<Q>(q, {"a", "b"}, {{e0, e1}, {e1, z}}, e1),
                  std::invalid_argument);
  // shape mismatch
  CHECK_THROWS_AS(FDAlgebra<Q>(q, {"a", "b"}, {{e0, e1}}, e0),
                  std::invalid_argument);
  // dual numbers, correctly presented, pass
  CHECK_NOTHROW(FDAlgebra<Q>(q, {"1", "x"}, {{e0, e1}, {e1, z}}, e0));
}

TEST_CASE("presentation coordinates") {
  auto D = fd_from_presentation(dual_algebra());
  const auto& R = D.source.comp(0).ring();
  // x^3 + x + 2 reduces to x + 2
  QP p = R.add(R.add(R.pow(R.var(0), 3), R.var(0)),
               R.constant(q.from_int(2)));
  auto v = D.vec(0, p);
  CHECK(v[0] == q.from_int(2));
  CHECK(v[1] == q.one());

  // round trip: coordinates recombine to the normal form
  QP back = R.add(R.scale(R.one(), v[0]), R.scale(R.var(0), v[1]));
  CHECK(R.eq(back, D.source.comp(0).nf(p)));
}

TEST_CASE("subalgebras close under multiplication") {
  auto T = fd_from_presentation(qx3_algebra());
  const auto& A = T.algebra;

  // x generates everything
  CHECK(FDSubalgebra<Q>(A, {A.basis(1)}).dim() == 3);

  // x^2 generates the span of {1, x^2}
  FDSubalgebra<Q> B(A, {A.basis(2)});
  REQUIRE(B.dim() == 2);
  CHECK(B.contains(A.basis(2)));
  CHECK_FALSE(B.contains(A.basis(1)));

  FDAlgebra<Q> Balg = B.as_algebra();  // = Q[e]/(e^2), validated on build
  CHECK(Balg.dim() == 2);
  CHECK(Balg.vec_eq(Balg.mul(Balg.basis(1), Balg.basis(1)),
                    {q.zero(), q.zero()}));

  // coordinates round trip and reject vectors outside the span
  std::vector<mpq_class> v{q.from_int(2), q.zero(), q.from_int(3)};
  auto c = B.coords(v);
  std::vector<mpq_class> rec(3, q.zero());
  for (size_t i = 0; i < B.dim(); ++i) {
    auto r = B.row(i);
    for (size_t j = 0; j < 3; ++j) rec[j] = q.add(rec[j], q.mul(c[i], r[j]));
  }
  CHECK(A.vec_eq(rec, v));
  CHECK_THROWS_AS(B.coords(A.basis(1)), std::invalid_argument);

  CHECK(trivial_sub(A).dim() == 1);
  CHECK(full_sub(A).dim() == 3);
}

TEST_CASE("modules and restriction") {
  auto D = fd_from_presentation(dual_algebra());
  auto M = FDModule<Q>::regular(D.algebra);
  REQUIRE(M.dim() == 2);
  // multiplication by x shifts 1 -> x -> 0
  CHECK(M.action(1).at(1, 0) == q.one());
  CHECK(q.is_zero(M.action(1).at(0, 0)));
  CHECK(q.is_zero(M.action(1).at(0, 1)));
  CHECK(q.is_zero(M.action(1).at(1, 1)));

  CHECK(FDModule<Q>::zero(D.algebra).dim() == 0);

  // bad action: unit must act as the identity
  std::vector<Matrix<Q>> bad{Matrix<Q>::zero(q, 1, 1),
                             Matrix<Q>::zero(q, 1, 1)};
  CHECK_THROWS_AS(FDModule<Q>(D.algebra, 1, bad), std::invalid_argument);

  // restriction to the base keeps the dimension
  auto B = trivial_sub(D.algebra);
  auto MB = restrict_module(B, M);
  CHECK(MB.dim() == 2);
  CHECK(MB.algebra().dim() == 1);
}

TEST_CASE("induction from the base") {
  auto D = fd_from_presentation(dual_algebra());
  const auto& A = D.algebra;
  auto triv = trivial_sub(A);
  auto full = full_sub(A);

  // A (x)_k Q has dimension dim A
  FDModule<Q> V(triv.as_algebra(), 1, {Matrix<Q>::identity(q, 1)});
  auto T = induce(A, triv, V);
  CHECK(T.module.dim() == 2);
  CHECK(T.section.rows() == 2);
  CHECK(T.section.cols() == 1);

  // A (x)_A M recovers M
  auto M = FDModule<Q>::regular(A);
  auto TM = induce(A, full, restrict_module(full, M), &M);
  CHECK(TM.module.dim() == 2);
  REQUIRE(TM.mu.has_value());
  CHECK(rank(q, *TM.mu) == 2);

  // zero module induces the zero module
  auto Z = induce(A, triv, FDModule<Q>::zero(triv.as_algebra()));
  CHECK(Z.module.dim() == 0);

  // A = Q[x]/(x^3) is not free over Q[x^2]: 1 and x generate with torsion
  auto T3 = fd_from_presentation(qx3_algebra());
  FDSubalgebra<Q> B2(T3.algebra, {T3.algebra.basis(2)});
  auto Breg = FDModule<Q>::regular(B2.as_algebra());
  CHECK(induce(T3.algebra, B2, Breg).module.dim() == 3);  // A (x)_B B = A
  auto Areg = FDModule<Q>::regular(T3.algebra);
  CHECK(induce(T3.algebra, B2, restrict_module(B2, Areg)).module.dim() == 5);
}

TEST_CASE("relative projectivity") {
  auto D = fd_from_presentation(dual_algebra());
  const auto& A = D.algebra;
  auto triv = trivial_sub(A);
  auto full = full_sub(A);

  // free modules are relatively projective, with a verified section
  auto M = FDModule<Q>::regular(A);
  auto pr = rel_projective_test(A, triv, M);
  REQUIRE(pr.projective);
  {
    auto T = induce(A, triv, restrict_module(triv, M), &M);
    const auto& s = *pr.section;
    CHECK(mat_is_identity(q, mat_mul(q, *T.mu, s)));
    for (size_t a = 0; a < A.dim(); ++a)
      CHECK(mat_mul(q, s, M.action(a))
                .eq(q, mat_mul(q, T.module.action(a), s)));
  }

  // Q = A/(x) is not relatively projective over (A, Q)
  auto Qmod = cyclic_module(D, {D.source.comp(0).ring().var(0)});
  REQUIRE(Qmod.dim() == 1);
  CHECK_FALSE(rel_projective_test(A, triv, Qmod).projective);

  // ... but every module is projective relative to (A, A)
  CHECK(rel_projective_test(A, full, Qmod).projective);
  CHECK(rel_projective_test(A, full, M).projective);

  // separable algebras: everything is relatively projective over the field
  auto U = fd_from_presentation(qx2m1_algebra());
  auto Upt = cyclic_module(U, {U.source.comp(0).ring().sub(
      U.source.comp(0).ring().var(0), U.source.comp(0).ring().one())});
  REQUIRE(Upt.dim() == 1);
  CHECK(rel_projective_test(U.algebra, trivial_sub(U.algebra), Upt).projective);

  // zero module is projective
  CHECK(rel_projective_test(A, triv, FDModule<Q>::zero(A)).projective);
}

TEST_CASE("induced modules are relatively projective") {
  auto T3 = fd_from_presentation(qx3_algebra());
  const auto& A = T3.algebra;
  auto triv = trivial_sub(A);
  FDSubalgebra<Q> B2(A, {A.basis(2)});

  std::vector<std::pair<FDSubalgebra<Q>, FDModule<Q>>> cases;
  cases.emplace_back(triv, FDModule<Q>(triv.as_algebra(), 2,
                                       {Matrix<Q>::identity(q, 2)}));
  cases.emplace_back(B2, FDModule<Q>::regular(B2.as_algebra()));
  cases.emplace_back(B2, restrict_module(B2, FDModule<Q>::regular(A)));
  cases.emplace_back(
      B2, restrict_module(
              B2, cyclic_module(T3, {T3.source.comp(0).ring().var(0)})));

  for (auto& [B, V] : cases) {
    auto ind = induce(A, B, V);
    CHECK(rel_projective_test(A, B, ind.module).projective);
  }
}

TEST_CASE("standard resolutions") {
  auto D = fd_from_presentation(dual_algebra());
  const auto& A = D.algebra;
  auto triv = trivial_sub(A);
  auto full = full_sub(A);
  auto Qmod = cyclic_module(D, {D.source.comp(0).ring().var(0)});

  SECTION("projective module: length zero") {
    auto res = standard_resolution(A, triv, FDModule<Q>::regular(A), 5);
    CHECK(res.terminated);
    CHECK(res.length == 0);
    check_resolution(res);
  }

  SECTION("relative to the whole algebra everything terminates at once") {
    auto res = standard_resolution(A, full, Qmod, 5);
    CHECK(res.terminated);
    CHECK(res.length == 0);
    check_resolution(res);
  }

  SECTION("the residue field of the dual numbers never terminates") {
    auto res = standard_resolution(A, triv, Qmod, 5);
    CHECK_FALSE(res.terminated);
    CHECK(res.length == 5);
    for (const auto& t : res.terms) CHECK(t.dim() == 2);
    check_resolution(res);
  }

  SECTION("Q[x]/(x^3) examples") {
    auto T3 = fd_from_presentation(qx3_algebra());
    auto M = cyclic_module(T3, {T3.source.comp(0).ring().var(0)});
    auto res = standard_resolution(T3.algebra, trivial_sub(T3.algebra), M, 3);
    CHECK_FALSE(res.terminated);
    check_resolution(res);

    FDSubalgebra<Q> B2(T3.algebra, {T3.algebra.basis(2)});
    auto res2 = standard_resolution(T3.algebra, B2, M, 3);
    CHECK_FALSE(res2.terminated);
    check_resolution(res2);
    auto res3 = standard_resolution(T3.algebra, B2,
                                    FDModule<Q>::regular(T3.algebra), 3);
    CHECK(res3.terminated);
    CHECK(res3.length == 0);
  }

  SECTION("separable: points over Q x Q resolve instantly") {
    auto P = fd_from_presentation(qq_algebra());
    auto res = standard_resolution(P.algebra, trivial_sub(P.algebra),
                                   FDModule<Q>::regular(P.algebra), 4);
    CHECK(res.terminated);
    CHECK(res.length == 0);
    check_resolution(res);
  }
}

TEST_CASE("relative projective dimension") {
  auto D = fd_from_presentation(dual_algebra());
  const auto& A = D.algebra;
  auto triv = trivial_sub(A);
  auto full = full_sub(A);
  auto Qmod = cyclic_module(D, {D.source.comp(0).ring().var(0)});

  CHECK(rel_pd(A, triv, FDModule<Q>::regular(A), 5) == ExtendedNat::finite(0));
  CHECK(rel_pd(A, triv, Qmod, 5) == ExtendedNat::at_least(6));
  CHECK(rel_pd(A, full, Qmod, 5) == ExtendedNat::finite(0));
  CHECK(rel_pd(A, triv, FDModule<Q>::zero(A), 5) == ExtendedNat::finite(0));

  // separable: every module has relative dimension zero over the field
  auto U = fd_from_presentation(qx2m1_algebra());
  const auto& RU = U.source.comp(0).ring();
  auto Upt = cyclic_module(U, {RU.sub(RU.var(0), RU.one())});
  CHECK(rel_pd(U.algebra, trivial_sub(U.algebra), Upt, 5) ==
        ExtendedNat::finite(0));
  auto Uptm = cyclic_module(U, {RU.add(RU.var(0), RU.one())});
  CHECK(rel_pd(U.algebra, trivial_sub(U.algebra), Uptm, 5) ==
        ExtendedNat::finite(0));
}

TEST_CASE("relative tor") {
  auto D = fd_from_presentation(dual_algebra());
  const auto& A = D.algebra;
  auto triv = trivial_sub(A);
  auto full = full_sub(A);
  auto Qmod = cyclic_module(D, {D.source.comp(0).ring().var(0)});
  auto Areg = FDModule<Q>::regular(A);

  SECTION("degree zero agrees with the plain tensor product") {
    auto t = rel_tor(A, triv, Qmod, Qmod, 0, 3);
    CHECK(t.dims[0] == static_cast<long>(module_tensor(Qmod, Qmod).dim()));
    auto t2 = rel_tor(A, triv, Areg, Qmod, 0, 3);
    CHECK(t2.dims[0] == static_cast<long>(module_tensor(Areg, Qmod).dim()));
  }

  SECTION("dual numbers: Tor of the residue field is 1 in every degree") {
    auto t = rel_tor(A, triv, Qmod, Qmod, 4, 6);
    CHECK(t.dims == std::vector<long>{1, 1, 1, 1, 1});
    CHECK(t.certified == std::vector<bool>{true, true, true, true, true});
    CHECK_FALSE(t.resolution_terminated);
  }

  SECTION("relative to the whole algebra Tor vanishes above degree zero") {
    auto t = rel_tor(A, full, Qmod, Qmod, 3, 4);
    CHECK(t.resolution_terminated);
    CHECK(t.dims == std::vector<long>{1, 0, 0, 0});
    CHECK(t.certified == std::vector<bool>{true, true, true, true});
  }

  SECTION("projective argument kills higher Tor") {
    auto t = rel_tor(A, triv, Qmod, Areg, 3, 5);
    CHECK(t.resolution_terminated);
    CHECK(t.dims == std::vector<long>{1, 0, 0, 0});
  }

  SECTION("cutoff semantics: last degree is only an upper bound") {
    auto t = rel_tor(A, triv, Qmod, Qmod, 4, 2);
    CHECK_FALSE(t.resolution_terminated);
    CHECK(t.dims[0] == 1);
    CHECK(t.dims[1] == 1);
    CHECK(t.certified[0]);
    CHECK(t.certified[1]);
    CHECK_FALSE(t.certified[2]);  // upper bound only
    CHECK(t.dims[2] >= 1);
    CHECK_FALSE(t.certified[3]);
    CHECK(t.dims[3] == 0);
    CHECK_FALSE(t.certified[4]);
  }

  SECTION("symmetry of Tor in the certified range") {
    auto T3 = fd_from_presentation(qx3_algebra());
    const auto& R3 = T3.source.comp(0).ring();
    auto tr = trivial_sub(T3.algebra);
    auto M1 = cyclic_module(T3, {R3.var(0)});                  // A/(x)
    auto M2 = cyclic_module(T3, {R3.mul(R3.var(0), R3.var(0))});  // A/(x^2)
    auto ab = rel_tor(T3.algebra, tr, M1, M2, 1, 2);
    auto ba = rel_tor(T3.algebra, tr, M2, M1, 1, 2);
    REQUIRE(ab.certified[0]);
    REQUIRE(ab.certified[1]);
    REQUIRE(ba.certified[0]);
    REQUIRE(ba.certified[1]);
    CHECK(ab.dims == ba.dims);
    CHECK(ab.dims[0] == static_cast<long>(module_tensor(M1, M2).dim()));
  }
}

TEST_CASE("enveloping extension and cdim") {
  auto D = fd_from_presentation(dual_algebra());
  const auto& A = D.algebra;

  SECTION("shape of the enveloping data") {
    auto env = fd_enveloping(A, trivial_sub(A));
    CHECK(env.ring.dim() == 4);   // A (x)_Q A
    CHECK(env.right.dim() == 2);  // right copy of A
    CHECK(env.diagonal.dim() == 2);

    auto envf = fd_enveloping(A, full_sub(A));
    CHECK(envf.ring.dim() == 2);  // A (x)_A A = A
    CHECK(envf.right.dim() == 2);
  }

  SECTION("cdim values") {
    CHECK(cdim_fd(A, full_sub(A), 4) == ExtendedNat::finite(0));
    CHECK(cdim_fd(A, trivial_sub(A), 4) == ExtendedNat::at_least(5));

    auto P = fd_from_presentation(qq_algebra());
    CHECK(cdim_fd(P.algebra, trivial_sub(P.algebra), 4) ==
          ExtendedNat::finite(0));
    auto U = fd_from_presentation(qx2m1_algebra());
    CHECK(cdim_fd(U.algebra, trivial_sub(U.algebra), 4) ==
          ExtendedNat::finite(0));
  }

  SECTION("projective dimension never exceeds cdim") {
    struct Case {
      FDAlgebra<Q> A;
      FDSubalgebra<Q> B;
      std::vector<FDModule<Q>> mods;
    };
    std::vector<Case> cases;

    auto T3 = fd_from_presentation(qx3_algebra());
    FDSubalgebra<Q> B2(T3.algebra, {T3.algebra.basis(2)});
    cases.push_back({A, trivial_sub(A),
                     {FDModule<Q>::regular(A),
                      cyclic_module(D, {D.source.comp(0).ring().var(0)})}});
    cases.push_back({A, full_sub(A),
                     {cyclic_module(D, {D.source.comp(0).ring().var(0)})}});
    auto U = fd_from_presentation(qx2m1_algebra());
    const auto& RU = U.source.comp(0).ring();
    cases.push_back({U.algebra, trivial_sub(U.algebra),
                     {FDModule<Q>::regular(U.algebra),
                      cyclic_module(U, {RU.sub(RU.var(0), RU.one())})}});
    cases.push_back({T3.algebra, B2,
                     {FDModule<Q>::regular(T3.algebra),
                      cyclic_module(T3, {T3.source.comp(0).ring().var(0)})}});

    for (const auto& c : cases) {
      ExtendedNat cd = cdim_fd(c.A, c.B, 3);
      for (const auto& M : c.mods)
        CHECK(ExtendedNat::leq_consistent(rel_pd(c.A, c.B, M, 3), cd));
    }
  }
}

TEST_CASE("relative bar homology") {
  auto D = fd_from_presentation(dual_algebra());
  const auto& A = D.algebra;
  auto triv = trivial_sub(A);

  SECTION("dual numbers over Q: the classical answer") {
    auto bar = rel_bar_homology(A, triv, 4);
    CHECK(bar.dims == std::vector<long>{2, 1, 1, 1, 1});
    CHECK(bar.chain_dims[0] == 2);
    CHECK(bar.chain_dims[1] == 4);
  }

  SECTION("relative to the whole algebra: nothing above degree zero") {
    auto bar = rel_bar_homology(A, full_sub(A), 4);
    CHECK(bar.dims == std::vector<long>{2, 0, 0, 0, 0});
    for (size_t k = 0; k < bar.chain_dims.size(); ++k)
      CHECK(bar.chain_dims[k] == 2);
  }

  SECTION("separable algebras have no higher homology") {
    auto P = fd_from_presentation(qq_algebra());
    auto barP = rel_bar_homology(P.algebra, trivial_sub(P.algebra), 4);
    CHECK(barP.dims == std::vector<long>{2, 0, 0, 0, 0});
    auto U = fd_from_presentation(qx2m1_algebra());
    auto barU = rel_bar_homology(U.algebra, trivial_sub(U.algebra), 4);
    CHECK(barU.dims == std::vector<long>{2, 0, 0, 0, 0});
  }

  SECTION("Q[x]/(x^3) over Q") {
    auto T3 = fd_from_presentation(qx3_algebra());
    auto bar = rel_bar_homology(T3.algebra, trivial_sub(T3.algebra), 2);
    CHECK(bar.dims == std::vector<long>{3, 2, 2});
  }

  SECTION("nontrivial base: chain spaces shrink to the balanced tensors") {
    auto T3 = fd_from_presentation(qx3_algebra());
    FDSubalgebra<Q> B2(T3.algebra, {T3.algebra.basis(2)});
    auto bar = rel_bar_homology(T3.algebra, B2, 2);
    CHECK(bar.dims[0] == 3);  // H_0 = A for a commutative algebra
    // C_1 = A (x)_B A matches the enveloping algebra
    auto env = fd_enveloping(T3.algebra, B2);
    CHECK(bar.chain_dims[1] == env.ring.dim());
  }

  SECTION("degree budget") {
    CHECK_THROWS_WITH(rel_bar_homology(A, triv, 5, 30),
                      ContainsSubstring("degree"));
  }
}

TEST_CASE("bar homology agrees with Tor over the enveloping extension") {
  // HH(A | Q) computed two ways: the balanced bar complex, and relative
  // Tor of (A, A) over (A (x) A, 1 (x) A).
  for (auto mk : {&dual_algebra, &qq_algebra}) {
    auto P = fd_from_presentation(mk());
    auto env = fd_enveloping(P.algebra, trivial_sub(P.algebra));
    auto tor = rel_tor(env.ring, env.right, env.diagonal, env.diagonal, 4, 6);
    auto bar = rel_bar_homology(P.algebra, trivial_sub(P.algebra), 4);
    for (size_t qdeg = 0; qdeg <= 4; ++qdeg) {
      REQUIRE(tor.certified[qdeg]);
      CHECK(tor.dims[qdeg] == bar.dims[qdeg]);
    }
  }
}

TEST_CASE("relative vanishing implies absolute vanishing") {
  // when Tor over (A^e, 1 (x) A) vanishes in positive degrees, so does
  // Tor over (A^e, Q)
  for (auto mk : {&qq_algebra, &qx2m1_algebra, &dual_algebra}) {
    auto P = fd_from_presentation(mk());
    auto env = fd_enveloping(P.algebra, trivial_sub(P.algebra));
    auto relt = rel_tor(env.ring, env.right, env.diagonal, env.diagonal, 3, 6);
    bool vanishes = true;
    for (size_t qdeg = 1; qdeg <= 3; ++qdeg)
      if (!relt.certified[qdeg] || relt.dims[qdeg] != 0) vanishes = false;
    if (!vanishes) continue;  // hypothesis fails; nothing to conclude
    auto abst = rel_tor(env.ring, trivial_sub(env.ring), env.diagonal,
                        env.diagonal, 3, 4);
    for (size_t qdeg = 1; qdeg <= 3; ++qdeg) {
      REQUIRE(abst.certified[qdeg]);
      CHECK(abst.dims[qdeg] == 0);
    }
  }
}

TEST_CASE("cyclic modules") {
  auto D = fd_from_presentation(dual_algebra());
  const auto& R = D.source.comp(0).ring();

  // unit ideal gives the zero module
  CHECK(cyclic_module(D, {R.one()}).dim() == 0);
  // no extra relations gives the regular module
  auto M = cyclic_module(D, {});
  CHECK(M.dim() == 2);

  // multi-component sources are rejected
  auto P = fd_from_presentation(qq_algebra());
  CHECK_THROWS_AS(cyclic_module(P, {}), std::invalid_argument);
}

TEST_CASE("fd machinery over a prime field") {
  using F = PrimeField;
  F f(7);
  PolyRing<F> R(f, {"x"});
  auto A = Algebra<F>::make(f, {AlgebraComponent<F>(
                                   R, {R.mul(R.var(0), R.var(0))})});
  auto P = fd_from_presentation(A);
  REQUIRE(P.algebra.dim() == 2);

  FDSubalgebra<F> triv(P.algebra, {});
  auto Qmod = cyclic_module(P, {R.var(0)});
  CHECK(rel_pd(P.algebra, triv, Qmod, 3) == ExtendedNat::at_least(4));

  auto bar = rel_bar_homology(P.algebra, triv, 2);
  CHECK(bar.dims == std::vector<long>{2, 1, 1});
}
