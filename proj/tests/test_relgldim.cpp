#include <catch2/catch_amalgamated.hpp>

#include "relsmooth/relgldim.hpp"

using namespace relsmooth;

namespace {

using Q = RationalField;
using QR = PolyRing<Q>;
using QP = Poly<Q>;
using QA = Algebra<Q>;
using QC = AlgebraComponent<Q>;
using QM = RingMap<Q>;

Q q;

QA mk_poly_algebra(const std::vector<std::string>& vars) {
  QR R(q, vars);
  return QA::make(q, {QC(R, {})});
}

QM etale_map() {
  QA B = mk_poly_algebra({"t"});
  QR RA(q, {"t", "u"});
  QP rel = RA.sub(RA.mul(RA.var(0), RA.var(1)), RA.one());
  QA A = QA::make(q, {QC(RA, {rel})});
  return QM(B, A, {0}, {{A.comp(0).ring().var(0)}});
}

QM pseudoreflection_map() {
  QA B = mk_poly_algebra({"s"});
  QR RA(q, {"s", "x"});
  QP rel = RA.sub(RA.mul(RA.var(1), RA.var(1)), RA.var(0));
  QA A = QA::make(q, {QC(RA, {rel})});
  return QM(B, A, {0}, {{A.comp(0).ring().var(0)}});
}

QM projection_map() {
  QA B = mk_poly_algebra({"y"});
  QA A = mk_poly_algebra({"x", "y"});
  return QM(B, A, {0}, {{A.comp(0).ring().var(1)}});
}

// B = Q[t], A = Q[t,y]/(y^2 - t^3): smooth fibers away from t = 0
QM cusp_family() {
  QA B = mk_poly_algebra({"t"});
  QR RA(q, {"t", "y"});
  QP rel = RA.sub(RA.pow(RA.var(1), 2), RA.pow(RA.var(0), 3));
  QA A = QA::make(q, {QC(RA, {rel})});
  return QM(B, A, {0}, {{A.comp(0).ring().var(0)}});
}

}  // namespace

TEST_CASE("fiber global dimension") {
  SECTION("dual numbers: infinite") {
    QR R(q, {"x"});
    QA fib = QA::make(q, {QC(R, {R.pow(R.var(0), 2)})});
    CHECK(fiber_gldim(fib).value.is_infinite());
  }

  SECTION("Q × Q: semisimple") {
    QR R(q, {});
    QA fib = QA::make(q, {QC(R, {}), QC(R, {})});
    CHECK(fiber_gldim(fib).value == ExtendedNat::finite(0));
  }

  SECTION("polynomial line: one") {
    CHECK(fiber_gldim(mk_poly_algebra({"x"})).value == ExtendedNat::finite(1));
  }

  SECTION("zero algebra: zero by convention") {
    CHECK(fiber_gldim(QA::zero(q)).value == ExtendedNat::finite(0));
  }

  SECTION("a singular component dominates a regular one") {
    QR R1(q, {"x"});
    QC reg(R1, {});
    QC sing(R1, {R1.pow(R1.var(0), 2)});
    QA fib = QA::make(q, {reg, sing});
    CHECK(fiber_gldim(fib).value.is_infinite());
    CHECK_FALSE(fiber_gldim(fib).notes.empty());
  }
}

TEST_CASE("relative global dimension") {
  SECTION("free extension of relative dimension one") {
    auto rep = rel_gldim(projection_map());
    CHECK(rep.value == ExtendedNat::finite(1));
    CHECK(rep.hypotheses.empty());
  }

  SECTION("étale: zero") {
    CHECK(rel_gldim(etale_map()).value == ExtendedNat::finite(0));
  }

  SECTION("pseudoreflection: infinite") {
    CHECK(rel_gldim(pseudoreflection_map()).value.is_infinite());
  }

  SECTION("identity: zero") {
    QA A = mk_poly_algebra({"x", "y"});
    const auto& R = A.comp(0).ring();
    QM id(A, A, {0}, {{R.var(0), R.var(1)}});
    CHECK(rel_gldim(id).value == ExtendedNat::finite(0));
  }

  SECTION("declared flatness shows up as a hypothesis") {
    QA B = mk_poly_algebra({"s", "w"});
    QA A = mk_poly_algebra({"s", "w", "x"});
    const auto& R = A.comp(0).ring();
    QM f(B, A, {0}, {{R.var(0), R.var(1)}});
    f.assume_flat = true;
    auto rep = rel_gldim(f);
    CHECK(rep.value == ExtendedNat::finite(1));
    REQUIRE(rep.hypotheses.size() == 1);
    CHECK(rep.hypotheses[0] == "flat:declared");
  }

  SECTION("undetermined smoothness gives a bare lower bound") {
    QA B = mk_poly_algebra({});
    QR R(q, {"x", "y", "z"});
    auto x = R.var(0), y = R.var(1), z = R.var(2);
    std::vector<QP> gens = {
        R.add(R.add(x, y), z),
        R.add(R.add(R.mul(x, y), R.mul(y, z)), R.mul(z, x)),
        R.sub(R.mul(R.mul(x, y), z), R.one()),
    };
    QA A = QA::make(q, {QC(R, gens)});
    Budget tiny;
    tiny.max_pairs = 1;
    QM f(B, A, {0}, {{}}, tiny);
    auto rep = rel_gldim(f);
    CHECK(rep.value == ExtendedNat::at_least(0));
    CHECK_FALSE(rep.notes.empty());
  }

  SECTION("finite value iff smooth, across the corpus") {
    std::vector<QM> corpus = {projection_map(), etale_map(),
                              pseudoreflection_map(), cusp_family()};
    for (const auto& f : corpus) {
      auto rep = rel_gldim(f);
      CHECK((rep.value.is_finite()) ==
            (rep.smoothness.verdict == SmoothVerdict::smooth));
    }
  }
}

TEST_CASE("sampled fiber lower bounds") {
  QM cusp = cusp_family();

  SECTION("cuspidal fiber at the origin is singular") {
    auto lb = rel_gldim_sampled_lower_bound(cusp, {{0, {q.from_int(0)}}});
    CHECK(lb.is_infinite());
  }

  SECTION("fiber at t=1 splits into two points") {
    auto lb = rel_gldim_sampled_lower_bound(cusp, {{0, {q.from_int(1)}}});
    CHECK(lb == ExtendedNat::finite(0));
  }

  SECTION("étale family: all sampled fibers are points or empty") {
    auto lb = rel_gldim_sampled_lower_bound(
        etale_map(), {{0, {q.from_int(0)}}, {0, {q.from_int(2)}}});
    CHECK(lb == ExtendedNat::finite(0));
  }

  SECTION("lower bounds are consistent with the closed form") {
    std::vector<QM> corpus = {projection_map(), etale_map(),
                              pseudoreflection_map(), cusp_family()};
    std::vector<mpq_class> samples = {q.from_int(0), q.from_int(1),
                                      q.from_int(-2)};
    for (const auto& f : corpus) {
      ExtendedNat total = rel_gldim(f).value;
      for (const auto& s : samples) {
        ExtendedNat lb = rel_gldim_sampled_lower_bound(f, {{0, {s}}});
        CHECK(ExtendedNat::leq_consistent(lb, total));
      }
    }
  }
}

TEST_CASE("tensor additivity") {
  SECTION("two free extensions add up") {
    QA Bv = mk_poly_algebra({"v"});
    QA Auv = mk_poly_algebra({"u", "v"});
    QM g(Bv, Auv, {0}, {{Auv.comp(0).ring().var(1)}});
    auto chk = tensor_gldim_check(projection_map(), g);
    CHECK(chk.left == ExtendedNat::finite(1));
    CHECK(chk.right == ExtendedNat::finite(1));
    CHECK(chk.tensor == ExtendedNat::finite(2));
    CHECK(chk.additive);
  }

  SECTION("étale ⊗ étale stays étale") {
    QA Bs = mk_poly_algebra({"s"});
    QR RA(q, {"s", "w"});
    QP rel = RA.sub(RA.mul(RA.var(0), RA.var(1)), RA.one());
    QA A2 = QA::make(q, {QC(RA, {rel})});
    QM g(Bs, A2, {0}, {{A2.comp(0).ring().var(0)}});
    auto chk = tensor_gldim_check(etale_map(), g);
    CHECK(chk.left == ExtendedNat::finite(0));
    CHECK(chk.right == ExtendedNat::finite(0));
    CHECK(chk.tensor == ExtendedNat::finite(0));
    CHECK(chk.additive);
    // verified ⊗ verified stays verified: no hypothesis flags
    CHECK(chk.tensor_report.hypotheses.empty());
  }

  SECTION("a singular factor absorbs everything") {
    auto chk = tensor_gldim_check(pseudoreflection_map(), etale_map());
    CHECK(chk.left.is_infinite());
    CHECK(chk.right == ExtendedNat::finite(0));
    CHECK(chk.tensor.is_infinite());
    CHECK(chk.additive);
  }
}

TEST_CASE("dropping a component never raises the dimension") {
  QA B = mk_poly_algebra({});
  QR R1(q, {"x"});
  QR R0(q, {});
  QC line(R1, {});
  QC point(R0, {});

  QA both = QA::make(q, {line, point});
  QM f2(B, both, {0, 0}, {{}, {}});
  QA just_point = QA::make(q, {point});
  QM f1(B, just_point, {0}, {{}});

  ExtendedNat with_line = rel_gldim(f2).value;
  ExtendedNat without = rel_gldim(f1).value;
  CHECK(with_line == ExtendedNat::finite(1));
  CHECK(without == ExtendedNat::finite(0));
  CHECK(ExtendedNat::leq_consistent(without, with_line));
}
