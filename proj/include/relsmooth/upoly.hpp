// Dense univariate polynomials over an exact field, just enough for the
// rational function field: arithmetic, euclidean division, gcd, and a
// canonical (monic) form.

#pragma once

#include <string>
#include <vector>

#include "relsmooth/field.hpp"

namespace relsmooth {

// Coefficients in ascending degree order; invariant: no trailing zeros,
// so deg = coeffs.size() - 1 and the zero polynomial is the empty vector.
template <ExactField F>
struct UPoly {
  std::vector<typename F::Elem> c;

  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
};

template <ExactField F>
class UPolyRing {
 public:
  using Elem = typename F::Elem;
  using P = UPoly<F>;

  explicit UPolyRing(F field) : f_(std::move(field)) {}
  const F& coeff_field() const { return f_; }

  P zero() const { return {}; }
  P one() const { return P{{f_.one()}}; }
  P constant(Elem a) const {
    if (f_.is_zero(a)) return {};
    return P{{std::move(a)}};
  }
  P gen() const { return P{{f_.zero(), f_.one()}}; }  // the variable t

  P from_coeffs(std::vector<Elem> cs) const {
    P p{std::move(cs)};
    trim(p);
    return p;
  }

  Elem lc(const P& p) const { return p.c.back(); }  // p != 0

  P add(const P& a, const P& b) const {
    P r;
    r.c.resize(std::max(a.c.size(), b.c.size()), f_.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = f_.add(r.c[i], b.c[i]);
    trim(r);
    return r;
  }

  P neg(const P& a) const {
    P r = a;
    for (auto& x : r.c) x = f_.neg(x);
    return r;
  }

  P sub(const P& a, const P& b) const { return add(a, neg(b)); }

  P mul(const P& a, const P& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    P r;
    r.c.assign(a.c.size() + b.c.size() - 1, f_.zero());
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j)
        r.c[i + j] = f_.add(r.c[i + j], f_.mul(a.c[i], b.c[j]));
    trim(r);
    return r;
  }

  P scale(const P& a, const Elem& s) const {
    if (f_.is_zero(s)) return {};
    P r = a;
    for (auto& x : r.c) x = f_.mul(x, s);
    return r;
  }

  // Euclidean division: a = q*b + r with deg r < deg b.
  std::pair<P, P> divmod(const P& a, const P& b) const {
    if (b.is_zero()) throw std::domain_error("UPoly: division by zero");
    P q, r = a;
    if (r.deg() >= b.deg())
      q.c.assign(static_cast<size_t>(r.deg() - b.deg()) + 1, f_.zero());
    Elem binv = f_.inv(lc(b));
    while (!r.is_zero() && r.deg() >= b.deg()) {
      int k = r.deg() - b.deg();
      Elem t = f_.mul(lc(r), binv);
      q.c[static_cast<size_t>(k)] = t;
      for (size_t i = 0; i < b.c.size(); ++i) {
        size_t j = static_cast<size_t>(k) + i;
        r.c[j] = f_.sub(r.c[j], f_.mul(t, b.c[i]));
      }
      trim(r);
    }
    trim(q);
    return {q, r};
  }

  P mod(const P& a, const P& b) const { return divmod(a, b).second; }
  P quo(const P& a, const P& b) const { return divmod(a, b).first; }

  P monic(const P& a) const {
    if (a.is_zero()) return a;
    return scale(a, f_.inv(lc(a)));
  }

  // Monic gcd.
  P gcd(P a, P b) const {
    while (!b.is_zero()) {
      P r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
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

  Elem eval(const P& a, const Elem& x) const {
    Elem r = f_.zero();
    for (auto it = a.c.rbegin(); it != a.c.rend(); ++it)
      r = f_.add(f_.mul(r, x), *it);
    return r;
  }

  // Formal derivative.
  P diff(const P& a) const {
    if (a.c.size() <= 1) return {};
    P r;
    r.c.reserve(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) {
      Elem k = f_.from_int(static_cast<long>(i));
      r.c.push_back(f_.mul(a.c[i], k));
    }
    trim(r);
    return r;
  }

  bool eq(const P& a, const P& b) const {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
      if (!f_.eq(a.c[i], b.c[i])) return false;
    return true;
  }

  std::string str(const P& a, const std::string& var = "t") const {
    if (a.is_zero()) return "0";
    std::string s;
    for (int i = a.deg(); i >= 0; --i) {
      const Elem& ci = a.c[static_cast<size_t>(i)];
      if (f_.is_zero(ci)) continue;
      if (!s.empty()) s += " + ";
      if (i == 0 || !f_.eq(ci, f_.one())) s += f_.str(ci);
      if (i > 0) {
        if (!f_.eq(ci, f_.one())) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim(P& p) const {
    while (!p.c.empty() && f_.is_zero(p.c.back())) p.c.pop_back();
  }

  F f_;
};

}  // namespace relsmooth
