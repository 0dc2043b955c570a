// Exact coefficient fields: the rationals (GMP-backed) and prime fields
// with a word-sized runtime modulus.
//
// A field is a small value object F exposing
//
//     using Elem = ...;
//     Elem zero()/one()/from_int(i)/from_decimal(str);
//     Elem add/sub/mul/div(a, b), neg(a), inv(a);
//     bool is_zero(a), eq(a, b);
//     std::string str(a);
//
// Elements are immutable values; all arithmetic is routed through the
// field object so that a runtime modulus needs no per-element storage.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace relsmooth {

template <class F>
concept ExactField = requires(const F f, typename F::Elem a) {
  { f.zero() } -> std::convertible_to<typename F::Elem>;
  { f.one() } -> std::convertible_to<typename F::Elem>;
  { f.add(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.eq(a, a) } -> std::convertible_to<bool>;
};

// ---------------------------------------------------------------------------
// QQ: arbitrary-precision rationals, always in lowest terms with positive
// denominator (mpq_class keeps the canonical form through arithmetic).

class RationalField {
 public:
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }

  Elem from_int(long n) const { return Elem(n); }

  Elem from_decimal(const std::string& digits) const {
    return Elem(mpz_class(digits, 10));
  }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }

  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("QQ: division by zero");
    return Elem(1) / a;
  }

  Elem div(const Elem& a, const Elem& b) const {
    if (b == 0) throw std::domain_error("QQ: division by zero");
    return a / b;
  }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  std::string str(const Elem& a) const { return a.get_str(); }
  std::string name() const { return "Q"; }

  bool operator==(const RationalField&) const { return true; }
};

// ---------------------------------------------------------------------------
// GF(p) for a word-sized prime p. Elements are canonical residues in
// [0, p). p is validated at construction (deterministic Miller-Rabin,
// correct for all 64-bit inputs).

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b,
                                std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e,
                                std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

class PrimeField {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!detail::is_prime_u64(p))
      throw std::invalid_argument("GF(p): modulus " + std::to_string(p) +
                                  " is not prime");
  }

  std::uint64_t modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }

  Elem from_int(long n) const {
    long r = n % static_cast<long>(p_);
    if (r < 0) r += static_cast<long>(p_);
    return static_cast<Elem>(r);
  }

  Elem from_decimal(const std::string& digits) const {
    Elem r = 0;
    for (char c : digits) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("GF(p): bad decimal literal");
      r = detail::mulmod_u64(r, 10, p_);
      r = (r + static_cast<Elem>(c - '0')) % p_;
    }
    return r;
  }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem mul(Elem a, Elem b) const { return detail::mulmod_u64(a, b, p_); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("GF(p): division by zero");
    return detail::powmod_u64(a, p_ - 2, p_);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  std::string str(Elem a) const { return std::to_string(a); }
  std::string name() const { return "F" + std::to_string(p_); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint64_t p_;
};

}  // namespace relsmooth
