// The rational function field k(t), built as reduced fractions of
// univariate polynomials. Canonical form: denominator monic, gcd(num, den)
// = 1, zero is 0/1. With that normalization equality is componentwise.

#pragma once

#include <string>
#include <utility>

#include "relsmooth/upoly.hpp"

namespace relsmooth {

template <ExactField F>
struct RatFun {
  UPoly<F> num, den;
};

template <ExactField F>
class RationalFunctionField {
 public:
  using Elem = RatFun<F>;

  explicit RationalFunctionField(F base)
      : up_(std::move(base)) {}

  const UPolyRing<F>& poly_ring() const { return up_; }
  const F& base_field() const { return up_.coeff_field(); }

  Elem zero() const { return {up_.zero(), up_.one()}; }
  Elem one() const { return {up_.one(), up_.one()}; }
  Elem gen() const { return {up_.gen(), up_.one()}; }

  Elem from_int(long n) const {
    return {up_.constant(base_field().from_int(n)), up_.one()};
  }
  Elem from_decimal(const std::string& d) const {
    return {up_.constant(base_field().from_decimal(d)), up_.one()};
  }
  Elem from_poly(UPoly<F> p) const { return {std::move(p), up_.one()}; }

  Elem make(UPoly<F> num, UPoly<F> den) const {
    if (den.is_zero()) throw std::domain_error("k(t): zero denominator");
    return reduce(std::move(num), std::move(den));
  }

  Elem add(const Elem& a, const Elem& b) const {
    return reduce(up_.add(up_.mul(a.num, b.den), up_.mul(b.num, a.den)),
                  up_.mul(a.den, b.den));
  }
  Elem sub(const Elem& a, const Elem& b) const {
    return reduce(up_.sub(up_.mul(a.num, b.den), up_.mul(b.num, a.den)),
                  up_.mul(a.den, b.den));
  }
  Elem mul(const Elem& a, const Elem& b) const {
    return reduce(up_.mul(a.num, b.num), up_.mul(a.den, b.den));
  }
  Elem neg(const Elem& a) const { return {up_.neg(a.num), a.den}; }

  Elem inv(const Elem& a) const {
    if (a.num.is_zero()) throw std::domain_error("k(t): division by zero");
    return reduce(a.den, a.num);
  }
  Elem div(const Elem& a, const Elem& b) const {
    if (b.num.is_zero()) throw std::domain_error("k(t): division by zero");
    return reduce(up_.mul(a.num, b.den), up_.mul(a.den, b.num));
  }

  bool is_zero(const Elem& a) const { return a.num.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const {
    return up_.eq(a.num, b.num) && up_.eq(a.den, b.den);
  }

  std::string str(const Elem& a) const {
    if (a.num.is_zero()) return "0";
    std::string n = up_.str(a.num);
    if (a.den.deg() == 0 && base_field().eq(a.den.c[0], base_field().one()))
      return n;
    return "(" + n + ")/(" + up_.str(a.den) + ")";
  }
  std::string name() const { return base_field().name() + "(t)"; }

  bool operator==(const RationalFunctionField& o) const {
    return base_field() == o.base_field();
  }

 private:
  Elem reduce(UPoly<F> num, UPoly<F> den) const {
    if (num.is_zero()) return zero();
    UPoly<F> g = up_.gcd(num, den);
    if (g.deg() > 0) {
      num = up_.quo(num, g);
      den = up_.quo(den, g);
    }
    // make denominator monic
    auto lc = up_.lc(den);
    if (!base_field().eq(lc, base_field().one())) {
      auto s = base_field().inv(lc);
      num = up_.scale(num, s);
      den = up_.scale(den, s);
    }
    return {std::move(num), std::move(den)};
  }

  UPolyRing<F> up_;
};

}  // namespace relsmooth
