// Multivariate polynomials over an exact field. A PolyRing fixes the
// variable names, the coefficient field and the term order; Poly values
// are plain sorted term lists (descending in the ring's order) and all
// arithmetic goes through the ring, so the same value type serves every
// field and order.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "relsmooth/field.hpp"
#include "relsmooth/monomial.hpp"

namespace relsmooth {

template <ExactField F>
struct Term {
  Monomial m;
  typename F::Elem c;
};

template <ExactField F>
struct Poly {
  std::vector<Term<F>> t;  // descending by ring order, no zero coefficients
  bool is_zero() const { return t.empty(); }
  size_t nterms() const { return t.size(); }
};

template <ExactField F>
class PolyRing {
 public:
  using Elem = typename F::Elem;
  using P = Poly<F>;

  PolyRing(F field, std::vector<std::string> vars,
           MonomialOrder order = MonomialOrder::grevlex())
      : f_(std::move(field)), vars_(std::move(vars)), ord_(order) {}

  const F& field() const { return f_; }
  const std::vector<std::string>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  const MonomialOrder& order() const { return ord_; }

  // same variables and field; order may differ
  bool same_ring(const PolyRing& o) const {
    return vars_ == o.vars_ && f_ == o.f_ && ord_ == o.ord_;
  }

  int var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    return -1;
  }

  P zero() const { return {}; }
  P one() const { return constant(f_.one()); }
  P constant(Elem a) const {
    if (f_.is_zero(a)) return {};
    return P{{Term<F>{mono_one(nvars()), std::move(a)}}};
  }
  P var(size_t i, unsigned k = 1) const {
    if (k == 0) return one();
    return P{{Term<F>{mono_var(nvars(), i, k), f_.one()}}};
  }
  P monomial(Monomial m, Elem c) const {
    if (f_.is_zero(c)) return {};
    return P{{Term<F>{std::move(m), std::move(c)}}};
  }

  P from_terms(std::vector<Term<F>> ts) const {
    std::sort(ts.begin(), ts.end(), [&](const Term<F>& a, const Term<F>& b) {
      return ord_.cmp(a.m, b.m) > 0;
    });
    P r;
    for (auto& t : ts) {
      if (!r.t.empty() && r.t.back().m == t.m)
        r.t.back().c = f_.add(r.t.back().c, t.c);
      else
        r.t.push_back(std::move(t));
      if (!r.t.empty() && f_.is_zero(r.t.back().c)) r.t.pop_back();
    }
    return r;
  }

  // Re-sorts a polynomial coming from a ring with the same variables but a
  // different order.
  P convert(const P& p) const {
    std::vector<Term<F>> ts = p.t;
    return from_terms(std::move(ts));
  }

  const Term<F>& lt(const P& p) const {
    if (p.is_zero()) throw std::domain_error("leading term of zero");
    return p.t.front();
  }
  const Monomial& lm(const P& p) const { return lt(p).m; }
  const Elem& lc(const P& p) const { return lt(p).c; }

  int deg(const P& p) const {  // total degree, -1 for zero
    int d = -1;
    for (const auto& t : p.t) d = std::max(d, static_cast<int>(t.m.deg()));
    return d;
  }

  P add(const P& a, const P& b) const {
    P r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
      int c = ord_.cmp(a.t[i].m, b.t[j].m);
      if (c > 0) {
        r.t.push_back(a.t[i++]);
      } else if (c < 0) {
        r.t.push_back(b.t[j++]);
      } else {
        Elem s = f_.add(a.t[i].c, b.t[j].c);
        if (!f_.is_zero(s)) r.t.push_back(Term<F>{a.t[i].m, std::move(s)});
        ++i, ++j;
      }
    }
    for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j) r.t.push_back(b.t[j]);
    return r;
  }

  P neg(const P& a) const {
    P r = a;
    for (auto& t : r.t) t.c = f_.neg(t.c);
    return r;
  }

  P sub(const P& a, const P& b) const { return add(a, neg(b)); }

  P scale(const P& a, const Elem& s) const {
    if (f_.is_zero(s)) return {};
    P r = a;
    for (auto& t : r.t) t.c = f_.mul(t.c, s);
    return r;
  }

  P mul_term(const P& a, const Monomial& m, const Elem& c) const {
    if (f_.is_zero(c)) return {};
    P r = a;
    for (auto& t : r.t) {
      t.m = mono_mul(t.m, m);
      t.c = f_.mul(t.c, c);
    }
    return r;  // multiplying by a monomial preserves the term order
  }

  P mul(const P& a, const P& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Term<F>> ts;
    ts.reserve(a.t.size() * b.t.size());
    for (const auto& ta : a.t)
      for (const auto& tb : b.t)
        ts.push_back(Term<F>{mono_mul(ta.m, tb.m), f_.mul(ta.c, tb.c)});
    return from_terms(std::move(ts));
  }

  P pow(P a, unsigned long e) const {
    P r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  P monic(const P& a) const {
    if (a.is_zero()) return a;
    return scale(a, f_.inv(lc(a)));
  }

  bool eq(const P& a, const P& b) const {
    if (a.t.size() != b.t.size()) return false;
    for (size_t i = 0; i < a.t.size(); ++i)
      if (!(a.t[i].m == b.t[i].m) || !f_.eq(a.t[i].c, b.t[i].c)) return false;
    return true;
  }

  bool is_constant(const P& a) const {
    return a.is_zero() || (a.t.size() == 1 && a.t[0].m.is_one());
  }

  // partial derivative with respect to variable j
  P diff(const P& a, size_t j) const {
    std::vector<Term<F>> ts;
    for (const auto& t : a.t) {
      if (t.m.e[j] == 0) continue;
      Term<F> d = t;
      d.c = f_.mul(d.c, f_.from_int(static_cast<long>(t.m.e[j])));
      d.m.e[j] -= 1;
      ts.push_back(std::move(d));
    }
    return from_terms(std::move(ts));
  }

  // does variable j occur in a?
  bool uses_var(const P& a, size_t j) const {
    for (const auto& t : a.t)
      if (t.m.e[j] > 0) return true;
    return false;
  }

  // Substitutes images[i] (a polynomial in dst) for variable i. Fields must
  // agree; the target ring may have different variables or order.
  template <class G>
  static Poly<G> apply(const PolyRing& src, const Poly<F>& p,
                       const PolyRing<G>& dst,
                       const std::vector<Poly<G>>& images,
                       auto&& coeff_map) {
    if (images.size() != src.nvars())
      throw std::invalid_argument("apply: wrong number of images");
    Poly<G> r = dst.zero();
    for (const auto& t : p.t) {
      Poly<G> term = dst.constant(coeff_map(t.c));
      for (size_t i = 0; i < src.nvars(); ++i)
        if (t.m.e[i] > 0) term = dst.mul(term, dst.pow(images[i], t.m.e[i]));
      r = dst.add(r, term);
    }
    return r;
  }

  // same-field specialization
  P apply(const Poly<F>& p, const PolyRing& dst,
          const std::vector<P>& images) const {
    return apply(*this, p, dst, images, [](const Elem& c) { return c; });
  }

  // evaluate at a rational point
  Elem eval(const P& p, const std::vector<Elem>& vals) const {
    if (vals.size() != nvars())
      throw std::invalid_argument("eval: wrong number of values");
    Elem r = f_.zero();
    for (const auto& t : p.t) {
      Elem x = t.c;
      for (size_t i = 0; i < nvars(); ++i)
        for (unsigned k = 0; k < t.m.e[i]; ++k) x = f_.mul(x, vals[i]);
      r = f_.add(r, x);
    }
    return r;
  }

  std::string mono_str(const Monomial& m) const {
    std::string s;
    for (size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += vars_[i];
      if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s;
  }

  std::string str(const P& p) const {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& t : p.t) {
      std::string cs = f_.str(t.c);
      bool negative = !cs.empty() && cs[0] == '-';
      if (out.empty()) {
        if (negative) {
          out += "-";
          cs = cs.substr(1);
        }
      } else {
        out += negative ? " - " : " + ";
        if (negative) cs = cs.substr(1);
      }
      std::string ms = mono_str(t.m);
      if (ms.empty()) {
        out += cs;
      } else if (cs == "1") {
        out += ms;
      } else {
        out += cs + "*" + ms;
      }
    }
    return out;
  }

 private:
  F f_;
  std::vector<std::string> vars_;
  MonomialOrder ord_;
};

}  // namespace relsmooth
