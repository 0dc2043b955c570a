// Smoothness of B → A by the relative Jacobian criterion: per-component
// relative dimension, the non-smooth locus (relation ideal plus the c×c
// Jacobian minors), a limited flatness checker (ground field base, or a
// univariate polynomial base via torsion testing over k(t)), and the
// aggregated verdict.

#pragma once

#include "relsmooth/algebra.hpp"
#include "relsmooth/ratfun.hpp"

namespace relsmooth {

// -- polynomial determinants and minors ---------------------------------------

template <ExactField F>
Poly<F> poly_det(const PolyRing<F>& R,
                 const std::vector<std::vector<Poly<F>>>& M) {
  size_t n = M.size();
  if (n == 0) return R.one();
  if (n == 1) return M[0][0];
  // Laplace expansion along the first row
  Poly<F> det = R.zero();
  for (size_t j = 0; j < n; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<Poly<F>>> sub;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Poly<F>> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(M[i][k]);
      sub.push_back(std::move(row));
    }
    Poly<F> t = R.mul(M[0][j], poly_det(R, sub));
    det = (j % 2 == 0) ? R.add(det, t) : R.sub(det, t);
  }
  return det;
}

namespace detail {
inline bool next_combination(std::vector<size_t>& c, size_t n) {
  size_t k = c.size();
  for (size_t i = k; i-- > 0;) {
    if (c[i] < n - (k - i)) {
      ++c[i];
      for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}
}  // namespace detail

// All c×c minors of a polynomial matrix, row/column subsets in ascending
// lexicographic order (deterministic).
template <ExactField F>
std::vector<Poly<F>> all_minors(const PolyRing<F>& R,
                                const std::vector<std::vector<Poly<F>>>& M,
                                size_t c) {
  std::vector<Poly<F>> out;
  size_t m = M.size();
  size_t n = m ? M[0].size() : 0;
  if (c == 0) {
    out.push_back(R.one());
    return out;
  }
  if (c > m || c > n) return out;

  std::vector<size_t> rows(c), cols(c);
  for (size_t i = 0; i < c; ++i) rows[i] = i;
  do {
    for (size_t i = 0; i < c; ++i) cols[i] = i;
    do {
      std::vector<std::vector<Poly<F>>> sub(c, std::vector<Poly<F>>(c));
      for (size_t i = 0; i < c; ++i)
        for (size_t j = 0; j < c; ++j) sub[i][j] = M[rows[i]][cols[j]];
      out.push_back(poly_det(R, sub));
    } while (detail::next_combination(cols, n));
  } while (detail::next_combination(rows, m));
  return out;
}

// -- relative dimension --------------------------------------------------------

struct RelDimInfo {
  long r = 0;
  bool declared = false;  // value came from a `reldim` annotation
};

// r_d = dim A_d − dim B_{σ(d)}, valid when the component dominates its
// source component (kernel = I_B); otherwise a declared value is required.
template <ExactField F>
RelDimInfo relative_dimension_raw(const RingMap<F>& f, size_t d) {
  auto it = f.declared_reldim.find(d);
  if (it != f.declared_reldim.end()) return {it->second, true};

  const auto& Bc = f.src().comp(f.sigma()[d]);
  std::vector<Poly<F>> ker = component_kernel(f, d);
  if (!ideal_eq(Bc.ring(), ker, Bc.gb()))
    throw std::runtime_error(
        "component " + std::to_string(d) +
        " does not dominate its source component (the map has a kernel); "
        "declare its relative dimension with `reldim`");

  ExtendedNat da = f.dst().comp(d).dim();
  ExtendedNat db = Bc.dim();
  long r = da.value() - db.value();
  if (r < 0)
    throw std::runtime_error("component " + std::to_string(d) +
                             " has negative dimension defect; declare "
                             "`reldim` or split components");
  return {r, false};
}

template <ExactField F>
ExtendedNat relative_dimension(const RingMap<F>& f, size_t d) {
  if (f.dst().is_zero_algebra()) return ExtendedNat::minus_infinity();
  return ExtendedNat::finite(relative_dimension_raw(f, d).r);
}

// -- the non-smooth locus ------------------------------------------------------

enum class LocusKind {
  unit,    // empty locus: smooth on the component
  proper,  // nonempty locus
  defect   // codimension outside [0, m]: cannot be a complete intersection
};

template <ExactField F>
struct ComponentLocus {
  LocusKind kind = LocusKind::unit;
  std::vector<Poly<F>> gb;  // reduced basis of I_rel + minors (graph ring)
  long r = 0, c = 0;
  bool r_declared = false;
  bool equidim_ok = true;  // (c+1)-minors vanish mod I_rel
  std::string note;
};

// Jacobian of the graph presentation: rows jac_rows, columns the target
// variables, entries reduced mod the relation ideal.
template <ExactField F>
std::vector<std::vector<Poly<F>>> relative_jacobian(
    const RelPresentation<F>& P) {
  std::vector<std::vector<Poly<F>>> J;
  for (const auto& row : P.jac_rows) {
    std::vector<Poly<F>> r;
    for (size_t j = P.n_src; j < P.ring.nvars(); ++j)
      r.push_back(P.nf(P.ring.diff(row, j)));
    J.push_back(std::move(r));
  }
  return J;
}

template <ExactField F>
ComponentLocus<F> nonsmooth_locus(const RingMap<F>& f, size_t d) {
  const auto& P = f.presentation(d);
  RelDimInfo rd = relative_dimension_raw(f, d);

  ComponentLocus<F> out;
  out.r = rd.r;
  out.r_declared = rd.declared;
  long n = static_cast<long>(P.n_tgt());
  long m = static_cast<long>(P.jac_rows.size());
  out.c = n - rd.r;

  if (out.c == 0) {
    out.kind = LocusKind::unit;
    out.gb = {P.ring.one()};
    return out;
  }
  if (out.c < 0 || out.c > m) {
    out.kind = LocusKind::defect;
    out.note = "expected codimension " + std::to_string(out.c) +
               " outside [0, " + std::to_string(m) +
               "]: no complete intersection possible";
    return out;
  }

  auto J = relative_jacobian(P);
  std::vector<Poly<F>> gens = P.rel_ideal;
  for (auto& mnr : all_minors(P.ring, J, static_cast<size_t>(out.c)))
    gens.push_back(P.nf(mnr));
  out.gb = groebner(P.ring, gens, f.budget());
  out.kind = is_unit_ideal(P.ring, out.gb) ? LocusKind::unit : LocusKind::proper;

  // equidimensionality cross-check: on a smooth equidimensional component
  // the Jacobian has rank exactly c everywhere, so all (c+1)-minors must
  // already lie in the relation ideal
  if (out.kind == LocusKind::unit && out.c + 1 <= std::min(m, n)) {
    for (auto& mnr : all_minors(P.ring, J, static_cast<size_t>(out.c) + 1)) {
      if (!P.nf(mnr).is_zero()) {
        out.equidim_ok = false;
        out.note =
            "Jacobian rank exceeds the expected corank somewhere: the "
            "component looks non-equidimensional; split components";
        break;
      }
    }
  }
  return out;
}

// Ω_{A_d|B} = 0, tested through the 0-th Fitting ideal (n×n minors
// together with the relations generate the unit ideal).
template <ExactField F>
bool differentials_vanish(const RingMap<F>& f, size_t d) {
  const auto& P = f.presentation(d);
  size_t n = P.n_tgt();
  if (n == 0) return true;
  auto J = relative_jacobian(P);
  if (J.size() < n) return false;
  std::vector<Poly<F>> gens = P.rel_ideal;
  for (auto& mnr : all_minors(P.ring, J, n)) gens.push_back(P.nf(mnr));
  return is_unit_ideal(P.ring, groebner(P.ring, gens, f.budget()));
}

// -- flatness ------------------------------------------------------------------

namespace detail {

// k[t, x̄] ↔ k(t)[x̄] conversions for the torsion test. tvar is the index
// of t in R's variables.
template <ExactField F>
Poly<RationalFunctionField<F>> to_ratfun_poly(
    const PolyRing<F>& R, size_t tvar, const Poly<F>& p,
    const PolyRing<RationalFunctionField<F>>& S) {
  const auto& K = S.field();
  const auto& U = K.poly_ring();
  std::vector<Term<RationalFunctionField<F>>> ts;
  for (const auto& t : p.t) {
    Monomial m = mono_one(S.nvars());
    size_t out = 0;
    for (size_t i = 0; i < R.nvars(); ++i) {
      if (i == tvar) continue;
      m.e[out++] = t.m.e[i];
    }
    auto coeff = K.from_poly(U.mul(U.pow(U.gen(), t.m.e[tvar]),
                                   U.constant(t.c)));
    ts.push_back({std::move(m), std::move(coeff)});
  }
  return S.from_terms(std::move(ts));
}

// clear denominators and remove k[t]-content, producing a primitive
// polynomial in k[t, x̄]
template <ExactField F>
Poly<F> clear_denominators(const PolyRing<RationalFunctionField<F>>& S,
                           const Poly<RationalFunctionField<F>>& p,
                           const PolyRing<F>& R, size_t tvar) {
  const auto& K = S.field();
  const auto& U = K.poly_ring();
  // common denominator = product of distinct denominators via lcm chain
  UPoly<F> den = U.one();
  for (const auto& t : p.t) {
    auto g = U.gcd(den, t.c.den);
    den = U.mul(den, U.quo(t.c.den, g));
  }
  // numerators after clearing
  std::vector<UPoly<F>> coeffs;
  for (const auto& t : p.t)
    coeffs.push_back(U.mul(t.c.num, U.quo(den, t.c.den)));
  // content removal
  UPoly<F> content;
  for (const auto& c : coeffs) content = U.gcd(content, c);
  if (!content.is_zero() && content.deg() > 0)
    for (auto& c : coeffs) c = U.quo(c, content);

  std::vector<Term<F>> ts;
  for (size_t k = 0; k < p.t.size(); ++k) {
    size_t in = 0;
    for (size_t d = 0; d < coeffs[k].c.size(); ++d) {
      if (R.field().is_zero(coeffs[k].c[d])) continue;
      Monomial m = mono_one(R.nvars());
      in = 0;
      for (size_t i = 0; i < R.nvars(); ++i) {
        if (i == tvar) {
          m.e[i] = static_cast<unsigned>(d);
        } else {
          m.e[i] = p.t[k].m.e[in++];
        }
      }
      ts.push_back({std::move(m), coeffs[k].c[d]});
    }
  }
  return R.from_terms(std::move(ts));
}

// torsion-freeness of k[t,x̄]/I over k[t]: the contraction of I·k(t)[x̄]
// back to k[t,x̄] must equal I
template <ExactField F>
bool torsion_free_over_t(const PolyRing<F>& R, size_t tvar,
                         const std::vector<Poly<F>>& ideal_gb,
                         const Budget& bud) {
  RationalFunctionField<F> K(R.field());
  std::vector<std::string> xvars;
  for (size_t i = 0; i < R.nvars(); ++i)
    if (i != tvar) xvars.push_back(R.vars()[i]);
  PolyRing<RationalFunctionField<F>> S(K, xvars, MonomialOrder::grevlex());

  std::vector<Poly<RationalFunctionField<F>>> gens;
  for (const auto& g : ideal_gb) gens.push_back(to_ratfun_poly(R, tvar, g, S));
  auto gb = groebner(S, gens, bud);
  if (is_unit_ideal(S, gb)) {
    // generic fiber empty: A is entirely t-torsion; flat only if A = 0
    return is_unit_ideal(R, ideal_gb);
  }

  const auto& U = K.poly_ring();
  std::vector<Poly<F>> cleared;
  UPoly<F> h = U.one();
  for (const auto& g : gb) {
    Poly<F> cg = clear_denominators(S, g, R, tvar);
    // leading coefficient in k[t] with respect to the x̄-monomial order:
    // collect terms of cg with the leading x̄-monomial of g
    const Monomial& lmS = S.lm(g);
    std::vector<typename F::Elem> lc_coeffs;
    UPoly<F> lc;
    for (const auto& t : cg.t) {
      Monomial mx = mono_one(S.nvars());
      size_t out = 0;
      for (size_t i = 0; i < R.nvars(); ++i)
        if (i != tvar) mx.e[out++] = t.m.e[i];
      if (mx == lmS) {
        // contributes t^e * coeff to the leading coefficient
        std::vector<typename F::Elem> cs(t.m.e[tvar] + 1, R.field().zero());
        cs.back() = t.c;
        lc = U.add(lc, U.from_coeffs(cs));
      }
    }
    auto gcd = U.gcd(h, lc);
    h = U.mul(h, U.quo(U.monic(lc), gcd));  // lcm of leading coefficients
    cleared.push_back(std::move(cg));
  }

  Poly<F> hp = R.zero();
  for (size_t d = 0; d < h.c.size(); ++d)
    if (!R.field().is_zero(h.c[d]))
      hp = R.add(hp, R.monomial(mono_var(R.nvars(), tvar,
                                         static_cast<unsigned>(d)),
                                h.c[d]));

  std::vector<Poly<F>> contraction = saturate(R, cleared, hp, bud);
  return ideal_eq(R, contraction, ideal_gb);
}

}  // namespace detail

// The checker handles B = k (always flat), the identity map, and
// B = k[t] (torsion test over k(t)); anything else needs `assume flat`.
template <ExactField F>
Flatness flatness_check(const RingMap<F>& f) {
  if (f.flat_hint) return *f.flat_hint;

  const Algebra<F>& B = f.src();
  bool base_is_field = B.ncomps() == 1 && B.comp(0).ring().nvars() == 0 &&
                       B.comp(0).gb().empty();
  if (base_is_field) return Flatness::verified;
  if (f.is_identity()) return Flatness::verified;

  bool base_is_poly_line = B.ncomps() == 1 && B.comp(0).ring().nvars() == 1 &&
                           B.comp(0).gb().empty();
  if (base_is_poly_line) {
    for (size_t d = 0; d < f.dst().ncomps(); ++d) {
      const auto& P = f.presentation(d);
      // t sits at index 0 ($-prefix of the single source variable)
      if (!detail::torsion_free_over_t(P.ring, 0, P.gb, f.budget()))
        return Flatness::failed;
    }
    return Flatness::verified;
  }

  if (f.assume_flat) return Flatness::declared;
  throw std::runtime_error(
      "flatness cannot be decided for this base ring; add `assume flat` "
      "for the map if the extension is known to be flat");
}

// -- aggregated verdict --------------------------------------------------------

enum class SmoothVerdict { smooth, not_smooth, undetermined };

inline std::string verdict_str(SmoothVerdict v) {
  switch (v) {
    case SmoothVerdict::smooth: return "smooth";
    case SmoothVerdict::not_smooth: return "not_smooth";
    case SmoothVerdict::undetermined: return "undetermined";
  }
  return "?";
}

template <ExactField F>
struct SmoothnessReport {
  SmoothVerdict verdict = SmoothVerdict::undetermined;
  Flatness flatness = Flatness::declared;
  std::vector<ComponentLocus<F>> components;
  bool etale = false;  // smooth with vanishing differentials
  std::vector<std::string> notes;
};

template <ExactField F>
SmoothnessReport<F> is_smooth(const RingMap<F>& f) {
  SmoothnessReport<F> rep;
  rep.flatness = flatness_check(f);

  bool any_proper = false, any_undetermined = false;
  for (size_t d = 0; d < f.dst().ncomps(); ++d) {
    try {
      ComponentLocus<F> loc = nonsmooth_locus(f, d);
      if (loc.kind != LocusKind::unit) any_proper = true;
      if (!loc.equidim_ok) any_undetermined = true;
      rep.components.push_back(std::move(loc));
    } catch (const BudgetExhausted& e) {
      any_undetermined = true;
      ComponentLocus<F> loc;
      loc.kind = LocusKind::unit;  // unknown; flagged through the note
      loc.equidim_ok = true;
      loc.note = std::string("budget exhausted: ") + e.what();
      rep.components.push_back(std::move(loc));
      rep.notes.push_back("component " + std::to_string(d) + ": " + e.what());
    }
  }

  if (rep.flatness == Flatness::failed || any_proper)
    rep.verdict = SmoothVerdict::not_smooth;
  else if (any_undetermined)
    rep.verdict = SmoothVerdict::undetermined;
  else
    rep.verdict = SmoothVerdict::smooth;

  for (const auto& c : rep.components)
    if (!c.equidim_ok && rep.verdict != SmoothVerdict::not_smooth)
      rep.verdict = SmoothVerdict::undetermined;

  if (rep.verdict == SmoothVerdict::smooth) {
    rep.etale = true;
    for (size_t d = 0; d < f.dst().ncomps(); ++d)
      if (!differentials_vanish(f, d)) {
        rep.etale = false;
        break;
      }
  }
  return rep;
}

// Absolute regularity of one presented component over the (perfect)
// ground field: the Jacobian criterion with B = k.
struct RegularityResult {
  bool regular = false;
  bool determinate = true;  // false on equidimensionality failure
  std::string note;
};

template <ExactField F>
RegularityResult regularity_test(const AlgebraComponent<F>& A,
                                    const Budget& bud = {}) {
  const auto& R = A.ring();
  RegularityResult out;

  ExtendedNat dim = A.dim();
  long r = dim.value();
  long n = static_cast<long>(R.nvars());
  long m = static_cast<long>(A.gens().size());
  long c = n - r;

  if (c == 0) {
    out.regular = true;
    return out;
  }
  if (c < 0 || c > m) {
    out.regular = false;
    out.note = "codimension defect";
    return out;
  }

  std::vector<std::vector<Poly<F>>> J;
  for (const auto& g : A.gens()) {
    std::vector<Poly<F>> row;
    for (size_t j = 0; j < R.nvars(); ++j) row.push_back(A.nf(R.diff(g, j)));
    J.push_back(std::move(row));
  }
  std::vector<Poly<F>> gens = A.gens();
  for (auto& mnr : all_minors(R, J, static_cast<size_t>(c)))
    gens.push_back(A.nf(mnr));
  out.regular = is_unit_ideal(R, groebner(R, gens, bud));

  if (out.regular && c + 1 <= std::min(m, n)) {
    for (auto& mnr : all_minors(R, J, static_cast<size_t>(c) + 1)) {
      if (!A.nf(mnr).is_zero()) {
        out.determinate = false;
        out.note = "component looks non-equidimensional; split components";
        break;
      }
    }
  }
  return out;
}

}  // namespace relsmooth
