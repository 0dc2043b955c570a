// Groebner machinery: multivariate division, Buchberger's algorithm with
// the normal selection strategy and the coprime/chain pair criteria,
// reduced bases, elimination, saturation and Krull dimension.
//
// Everything here is deterministic: pair selection breaks ties by index,
// containers are plain vectors, and the reduced basis is a canonical form
// (monic, interreduced, sorted by leading monomial), so two runs over the
// same input produce identical output.

#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relsmooth/extnat.hpp"
#include "relsmooth/poly.hpp"

namespace relsmooth {

struct Budget {
  long max_pairs = 200000;  // S-pairs considered before giving up
  long max_degree = 200;    // cap on the degree of any S-pair lcm
};

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Remainder of p on full division by G: every term of the result is
// divisible by no leading monomial of G. Reducers are tried in list order.
template <ExactField F>
Poly<F> normal_form(const PolyRing<F>& R, Poly<F> p,
                    const std::vector<Poly<F>>& G) {
  const F& f = R.field();
  Poly<F> r = R.zero();
  while (!p.is_zero()) {
    bool reduced = false;
    for (const auto& g : G) {
      if (g.is_zero()) continue;
      if (mono_divides(R.lm(g), R.lm(p))) {
        Monomial q = mono_div(R.lm(p), R.lm(g));
        typename F::Elem c = f.div(R.lc(p), R.lc(g));
        p = R.sub(p, R.mul_term(g, q, c));
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      // move the leading term to the remainder
      Poly<F> lt_poly = R.monomial(R.lm(p), R.lc(p));
      r = R.add(r, lt_poly);
      p = R.sub(p, lt_poly);
    }
  }
  return r;
}

template <ExactField F>
Poly<F> spoly(const PolyRing<F>& R, const Poly<F>& a, const Poly<F>& b) {
  const F& f = R.field();
  Monomial l = mono_lcm(R.lm(a), R.lm(b));
  Poly<F> ua = R.mul_term(a, mono_div(l, R.lm(a)), f.inv(R.lc(a)));
  Poly<F> ub = R.mul_term(b, mono_div(l, R.lm(b)), f.inv(R.lc(b)));
  return R.sub(ua, ub);
}

// Buchberger's algorithm. Pairs are processed in increasing lcm order
// (ties by index), skipping coprime-leading-term pairs and pairs covered
// by the chain criterion (with strict lcm decrease, so the induction is
// well founded under the normal strategy).
template <ExactField F>
std::vector<Poly<F>> buchberger(const PolyRing<F>& R, std::vector<Poly<F>> gens,
                                const Budget& bud = {}) {
  std::vector<Poly<F>> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(std::move(g));

  std::set<std::pair<size_t, size_t>> pending;
  for (size_t i = 0; i < G.size(); ++i)
    for (size_t j = i + 1; j < G.size(); ++j) pending.insert({i, j});

  long processed = 0;
  while (!pending.empty()) {
    if (++processed > bud.max_pairs)
      throw BudgetExhausted("groebner: pair budget exhausted after " +
                            std::to_string(bud.max_pairs) + " pairs (basis size " +
                            std::to_string(G.size()) + ")");

    // normal strategy: smallest lcm in the term order, ties by (i, j)
    auto best = pending.begin();
    Monomial best_lcm = mono_lcm(R.lm(G[best->first]), R.lm(G[best->second]));
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = mono_lcm(R.lm(G[it->first]), R.lm(G[it->second]));
      if (R.order().cmp(l, best_lcm) < 0) {
        best = it;
        best_lcm = l;
      }
    }
    auto [i, j] = *best;
    pending.erase(best);

    if (static_cast<long>(best_lcm.deg()) > bud.max_degree)
      throw BudgetExhausted("groebner: degree budget exceeded (lcm degree " +
                            std::to_string(best_lcm.deg()) + " > " +
                            std::to_string(bud.max_degree) + ", basis size " +
                            std::to_string(G.size()) + ")");

    if (mono_coprime(R.lm(G[i]), R.lm(G[j]))) continue;

    bool chained = false;
    for (size_t k = 0; k < G.size() && !chained; ++k) {
      if (k == i || k == j) continue;
      if (!mono_divides(R.lm(G[k]), best_lcm)) continue;
      Monomial lik = mono_lcm(R.lm(G[i]), R.lm(G[k]));
      Monomial ljk = mono_lcm(R.lm(G[j]), R.lm(G[k]));
      if (lik == best_lcm || ljk == best_lcm) continue;  // need strict decrease
      auto pik = std::minmax(i, k);
      auto pjk = std::minmax(j, k);
      if (pending.count({pik.first, pik.second})) continue;
      if (pending.count({pjk.first, pjk.second})) continue;
      chained = true;
    }
    if (chained) continue;

    Poly<F> h = normal_form(R, spoly(R, G[i], G[j]), G);
    if (h.is_zero()) continue;
    G.push_back(std::move(h));
    size_t n = G.size() - 1;
    for (size_t k = 0; k < n; ++k) pending.insert({k, n});
  }
  return G;
}

// Canonical reduced basis: minimal leading monomials, every generator
// monic and fully reduced against the others, sorted ascending by leading
// monomial.
template <ExactField F>
std::vector<Poly<F>> reduce_basis(const PolyRing<F>& R, std::vector<Poly<F>> G) {
  // drop zeros, make monic
  std::vector<Poly<F>> H;
  for (auto& g : G)
    if (!g.is_zero()) H.push_back(R.monic(g));

  // minimalize: keep only generators whose leading monomial is not divisible
  // by another kept one (scan in increasing LM order so divisors come first)
  std::sort(H.begin(), H.end(), [&](const Poly<F>& a, const Poly<F>& b) {
    int c = R.order().cmp(R.lm(a), R.lm(b));
    if (c != 0) return c < 0;
    return R.order().cmp(a.t.back().m, b.t.back().m) < 0;  // stable-ish tie
  });
  std::vector<Poly<F>> M;
  for (auto& h : H) {
    bool redundant = false;
    for (const auto& m : M)
      if (mono_divides(R.lm(m), R.lm(h))) {
        redundant = true;
        break;
      }
    if (!redundant) M.push_back(std::move(h));
  }

  // interreduce tails
  for (size_t i = 0; i < M.size(); ++i) {
    std::vector<Poly<F>> others;
    for (size_t j = 0; j < M.size(); ++j)
      if (j != i) others.push_back(M[j]);
    M[i] = normal_form(R, M[i], others);
    M[i] = R.monic(M[i]);
  }

  std::sort(M.begin(), M.end(), [&](const Poly<F>& a, const Poly<F>& b) {
    return R.order().cmp(R.lm(a), R.lm(b)) < 0;
  });
  return M;
}

template <ExactField F>
std::vector<Poly<F>> groebner(const PolyRing<F>& R,
                              const std::vector<Poly<F>>& gens,
                              const Budget& bud = {}) {
  return reduce_basis(R, buchberger(R, gens, bud));
}

// -- queries on a reduced basis ---------------------------------------------

template <ExactField F>
bool is_unit_ideal(const PolyRing<F>&, const std::vector<Poly<F>>& gb) {
  return gb.size() == 1 && gb[0].t.size() == 1 && gb[0].t[0].m.is_one();
}

template <ExactField F>
bool is_zero_ideal(const std::vector<Poly<F>>& gb) {
  return gb.empty();
}

template <ExactField F>
bool ideal_member(const PolyRing<F>& R, const Poly<F>& p,
                  const std::vector<Poly<F>>& gb) {
  return normal_form(R, p, gb).is_zero();
}

// equality of ideals presented by reduced bases in the same ring/order
template <ExactField F>
bool ideal_eq(const PolyRing<F>& R, const std::vector<Poly<F>>& a,
              const std::vector<Poly<F>>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!R.eq(a[i], b[i])) return false;
  return true;
}

// -- ring-to-ring transfer ---------------------------------------------------

// Maps a polynomial into dst by matching variable names. Every variable
// actually used must exist in dst.
template <ExactField F>
Poly<F> transfer(const PolyRing<F>& src, const Poly<F>& p,
                 const PolyRing<F>& dst) {
  std::vector<Poly<F>> images;
  images.reserve(src.nvars());
  for (size_t i = 0; i < src.nvars(); ++i) {
    int j = dst.var_index(src.vars()[i]);
    if (j < 0) {
      if (src.uses_var(p, i))
        throw std::invalid_argument("transfer: variable " + src.vars()[i] +
                                    " missing in target ring");
      images.push_back(dst.zero());
    } else {
      images.push_back(dst.var(static_cast<size_t>(j)));
    }
  }
  return src.apply(p, dst, images);
}

// -- elimination -------------------------------------------------------------

// Eliminates the first k variables of R: returns the ring on the remaining
// variables (grevlex) together with a reduced basis of I ∩ that subring.
template <ExactField F>
std::pair<PolyRing<F>, std::vector<Poly<F>>> eliminate_prefix(
    const PolyRing<F>& R, const std::vector<Poly<F>>& gens, size_t k,
    const Budget& bud = {}) {
  PolyRing<F> Rblk(R.field(), R.vars(),
                   MonomialOrder::block(k, MonomialOrder::grevlex()));
  std::vector<Poly<F>> bgens;
  bgens.reserve(gens.size());
  for (const auto& g : gens) bgens.push_back(Rblk.convert(g));
  std::vector<Poly<F>> gb = groebner(Rblk, bgens, bud);

  std::vector<std::string> keep(R.vars().begin() + static_cast<long>(k),
                                R.vars().end());
  PolyRing<F> R2(R.field(), keep, MonomialOrder::grevlex());
  std::vector<Poly<F>> out;
  for (const auto& g : gb) {
    bool uses_prefix = false;
    for (size_t i = 0; i < k && !uses_prefix; ++i)
      if (Rblk.uses_var(g, i)) uses_prefix = true;
    if (!uses_prefix) out.push_back(transfer(Rblk, g, R2));
  }
  return {std::move(R2), reduce_basis(R2, std::move(out))};
}

// Eliminates an arbitrary set of variables (by index). The dropped
// variables are permuted to the front, then eliminate_prefix applies.
template <ExactField F>
std::pair<PolyRing<F>, std::vector<Poly<F>>> eliminate_vars(
    const PolyRing<F>& R, const std::vector<Poly<F>>& gens,
    const std::vector<size_t>& drop, const Budget& bud = {}) {
  std::vector<bool> dropped(R.nvars(), false);
  for (size_t i : drop) dropped.at(i) = true;
  std::vector<std::string> perm_vars;
  for (size_t i : drop) perm_vars.push_back(R.vars()[i]);
  for (size_t i = 0; i < R.nvars(); ++i)
    if (!dropped[i]) perm_vars.push_back(R.vars()[i]);

  PolyRing<F> Rp(R.field(), perm_vars, MonomialOrder::grevlex());
  std::vector<Poly<F>> pg;
  pg.reserve(gens.size());
  for (const auto& g : gens) pg.push_back(transfer(R, g, Rp));
  return eliminate_prefix(Rp, pg, drop.size(), bud);
}

// -- saturation ---------------------------------------------------------------

// I : f^∞ via the Rabinowitsch trick: adjoin a fresh inverse variable s,
// add 1 - f*s, eliminate s. Result is a reduced basis in R.
template <ExactField F>
std::vector<Poly<F>> saturate(const PolyRing<F>& R,
                              const std::vector<Poly<F>>& gens,
                              const Poly<F>& f, const Budget& bud = {}) {
  if (f.is_zero()) throw std::invalid_argument("saturate: zero element");
  std::string s = "$sat";
  while (R.var_index(s) >= 0) s += "_";
  std::vector<std::string> vars;
  vars.push_back(s);
  vars.insert(vars.end(), R.vars().begin(), R.vars().end());
  PolyRing<F> Rs(R.field(), vars,
                 MonomialOrder::block(1, MonomialOrder::grevlex()));

  std::vector<Poly<F>> gens2;
  gens2.reserve(gens.size() + 1);
  for (const auto& g : gens) gens2.push_back(transfer(R, g, Rs));
  gens2.push_back(
      Rs.sub(Rs.one(), Rs.mul(Rs.var(0), transfer(R, f, Rs))));

  auto [R2, gb2] = eliminate_prefix(Rs, gens2, 1, bud);
  std::vector<Poly<F>> out;
  out.reserve(gb2.size());
  for (const auto& g : gb2) out.push_back(transfer(R2, g, R));
  return reduce_basis(R, std::move(out));
}

// I ∩ J via the usual trick: eliminate t from t·I + (1−t)·J.
template <ExactField F>
std::vector<Poly<F>> ideal_intersect(const PolyRing<F>& R,
                                     const std::vector<Poly<F>>& I,
                                     const std::vector<Poly<F>>& J,
                                     const Budget& bud = {}) {
  std::string t = "$mix";
  while (R.var_index(t) >= 0) t += "_";
  std::vector<std::string> vars;
  vars.push_back(t);
  vars.insert(vars.end(), R.vars().begin(), R.vars().end());
  PolyRing<F> Rt(R.field(), vars,
                 MonomialOrder::block(1, MonomialOrder::grevlex()));
  Poly<F> tv = Rt.var(0);
  Poly<F> omt = Rt.sub(Rt.one(), tv);
  std::vector<Poly<F>> gens;
  for (const auto& g : I) gens.push_back(Rt.mul(tv, transfer(R, g, Rt)));
  for (const auto& g : J) gens.push_back(Rt.mul(omt, transfer(R, g, Rt)));
  auto [R2, gb2] = eliminate_prefix(Rt, gens, 1, bud);
  std::vector<Poly<F>> out;
  out.reserve(gb2.size());
  for (const auto& g : gb2) out.push_back(transfer(R2, g, R));
  return reduce_basis(R, std::move(out));
}

// -- Krull dimension -----------------------------------------------------------

// dim k[x]/I from a reduced basis: the largest subset S of variables such
// that no leading monomial is supported inside S. The unit ideal (empty
// scheme) gets -infinity.
template <ExactField F>
ExtendedNat krull_dim(const PolyRing<F>& R, const std::vector<Poly<F>>& gb) {
  if (is_unit_ideal(R, gb)) return ExtendedNat::minus_infinity();
  size_t n = R.nvars();
  if (n > 24) throw std::invalid_argument("krull_dim: too many variables");

  std::vector<Monomial> lms;
  lms.reserve(gb.size());
  for (const auto& g : gb) lms.push_back(R.lm(g));

  long best = 0;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<bool> in(n);
    long size = 0;
    for (size_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) in[i] = true, ++size;
    if (size <= best) continue;
    bool independent = true;
    for (const auto& m : lms)
      if (mono_supported_in(m, in)) {
        independent = false;
        break;
      }
    if (independent) best = size;
  }
  return ExtendedNat::finite(best);
}

}  // namespace relsmooth
