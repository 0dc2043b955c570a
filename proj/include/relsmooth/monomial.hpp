// Monomials as exponent vectors, plus the three term orders we use:
// lex, grevlex and a block (elimination) order that makes a prefix of
// the variables dominate the rest.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace relsmooth {

struct Monomial {
  std::vector<unsigned> e;

  unsigned deg() const {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
  }
  bool is_one() const {
    return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
};

inline Monomial mono_one(size_t n) { return Monomial{std::vector<unsigned>(n, 0)}; }

inline Monomial mono_var(size_t n, size_t i, unsigned k = 1) {
  Monomial m = mono_one(n);
  m.e[i] = k;
  return m;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
  return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
  // a | b
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

inline Monomial mono_div(const Monomial& a, const Monomial& b) {
  // a / b, assuming b | a
  Monomial r = a;
  for (size_t i = 0; i < r.e.size(); ++i) {
    if (b.e[i] > r.e[i]) throw std::logic_error("monomial division underflow");
    r.e[i] -= b.e[i];
  }
  return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(r.e[i], b.e[i]);
  return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > 0 && b.e[i] > 0) return false;
  return true;
}

// true if every variable appearing in m lies in the given set
inline bool mono_supported_in(const Monomial& m, const std::vector<bool>& vars) {
  for (size_t i = 0; i < m.e.size(); ++i)
    if (m.e[i] > 0 && !vars[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------

class MonomialOrder {
 public:
  enum class Kind : std::uint8_t { lex, grevlex, block };

  static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0, Kind::lex); }
  static MonomialOrder grevlex() {
    return MonomialOrder(Kind::grevlex, 0, Kind::grevlex);
  }
  // Variables [0, prefix) dominate; ties broken by `inner` on the rest.
  // The prefix block itself is compared by grevlex.
  static MonomialOrder block(size_t prefix, const MonomialOrder& inner) {
    if (inner.kind_ == Kind::block)
      throw std::invalid_argument("nested block orders not supported");
    return MonomialOrder(Kind::block, prefix, inner.kind_);
  }

  Kind kind() const { return kind_; }
  size_t prefix() const { return prefix_; }

  // three-way: >0 if a > b, <0 if a < b
  int cmp(const Monomial& a, const Monomial& b) const {
    size_t n = a.e.size();
    switch (kind_) {
      case Kind::lex: return lex_cmp(a, b, 0, n);
      case Kind::grevlex: return grevlex_cmp(a, b, 0, n);
      case Kind::block: {
        int c = grevlex_cmp(a, b, 0, std::min(prefix_, n));
        if (c != 0) return c;
        size_t lo = std::min(prefix_, n);
        return inner_ == Kind::lex ? lex_cmp(a, b, lo, n)
                                   : grevlex_cmp(a, b, lo, n);
      }
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }

  bool operator==(const MonomialOrder& o) const {
    return kind_ == o.kind_ && prefix_ == o.prefix_ && inner_ == o.inner_;
  }

 private:
  MonomialOrder(Kind k, size_t p, Kind i) : kind_(k), prefix_(p), inner_(i) {}

  static int lex_cmp(const Monomial& a, const Monomial& b, size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
    }
    return 0;
  }

  static int grevlex_cmp(const Monomial& a, const Monomial& b, size_t lo,
                         size_t hi) {
    unsigned da = 0, db = 0;
    for (size_t i = lo; i < hi; ++i) da += a.e[i], db += b.e[i];
    if (da != db) return da > db ? 1 : -1;
    for (size_t i = hi; i-- > lo;) {
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
  }

  Kind kind_;
  size_t prefix_;
  Kind inner_;
};

}  // namespace relsmooth
