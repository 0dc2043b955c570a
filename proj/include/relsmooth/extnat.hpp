// Extended natural numbers for dimension bookkeeping.
//
// Values: finite(n), infinite, at_least(n) (a lower bound produced when a
// computation hits its cutoff), and minus_infinity (the dimension of the
// empty scheme / zero ring). Ordering between a bound and an exact value
// is only partially known, hence leq_consistent instead of operator<=.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace relsmooth {

class ExtendedNat {
 public:
  enum class Tag : std::uint8_t { finite, infinite, at_least, minus_infinity };

  static ExtendedNat finite(long n) {
    if (n < 0) throw std::invalid_argument("ExtendedNat: negative finite value");
    return ExtendedNat(Tag::finite, n);
  }
  static ExtendedNat infinite() { return ExtendedNat(Tag::infinite, 0); }
  static ExtendedNat at_least(long n) {
    if (n < 0) throw std::invalid_argument("ExtendedNat: negative bound");
    return ExtendedNat(Tag::at_least, n);
  }
  static ExtendedNat minus_infinity() {
    return ExtendedNat(Tag::minus_infinity, 0);
  }

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::finite; }
  bool is_infinite() const { return tag_ == Tag::infinite; }
  bool is_bound() const { return tag_ == Tag::at_least; }
  bool is_minus_infinity() const { return tag_ == Tag::minus_infinity; }

  // Only valid for finite / at_least.
  long value() const {
    if (tag_ != Tag::finite && tag_ != Tag::at_least)
      throw std::logic_error("ExtendedNat: no numeric value");
    return n_;
  }

  // Least upper bound in the information order: joining an exact value with
  // a lower bound can only yield a lower bound unless the bound is dominated.
  static ExtendedNat join(const ExtendedNat& a, const ExtendedNat& b) {
    if (a.tag_ == Tag::minus_infinity) return b;
    if (b.tag_ == Tag::minus_infinity) return a;
    if (a.tag_ == Tag::infinite || b.tag_ == Tag::infinite) return infinite();
    if (a.tag_ == Tag::finite && b.tag_ == Tag::finite)
      return finite(std::max(a.n_, b.n_));
    // at least one is a bound
    return at_least(std::max(a.n_, b.n_));
  }

  // Addition with the usual absorption by infinity. minus_infinity absorbs
  // everything except infinity (that combination is rejected: it never
  // arises for the quantities we add).
  static ExtendedNat add(const ExtendedNat& a, const ExtendedNat& b) {
    if (a.tag_ == Tag::infinite || b.tag_ == Tag::infinite) {
      if (a.tag_ == Tag::minus_infinity || b.tag_ == Tag::minus_infinity)
        throw std::logic_error("ExtendedNat: infinity + minus_infinity");
      return infinite();
    }
    if (a.tag_ == Tag::minus_infinity || b.tag_ == Tag::minus_infinity)
      return minus_infinity();
    if (a.tag_ == Tag::at_least || b.tag_ == Tag::at_least)
      return at_least(a.n_ + b.n_);
    return finite(a.n_ + b.n_);
  }

  // "a <= b is not refuted by what we know". at_least(n) stands for some
  // unknown value >= n, so e.g. at_least(3) <= finite(5) is consistent
  // (the true value could be 4) while finite(5) <= at_least(3) is also
  // consistent (the true value could be 9). Only definite violations
  // return false.
  static bool leq_consistent(const ExtendedNat& a, const ExtendedNat& b) {
    if (a.tag_ == Tag::minus_infinity) return true;
    if (b.tag_ == Tag::infinite) return true;
    if (a.tag_ == Tag::infinite) return b.tag_ == Tag::at_least;
    if (b.tag_ == Tag::minus_infinity) return false;
    if (a.tag_ == Tag::finite && b.tag_ == Tag::finite) return a.n_ <= b.n_;
    if (a.tag_ == Tag::at_least) return true;  // unknown value may be small
    // a finite, b = at_least(m): b's true value may exceed a.
    return true;
  }

  bool operator==(const ExtendedNat& o) const {
    if (tag_ != o.tag_) return false;
    if (tag_ == Tag::finite || tag_ == Tag::at_least) return n_ == o.n_;
    return true;
  }
  bool operator!=(const ExtendedNat& o) const { return !(*this == o); }

  std::string str() const {
    switch (tag_) {
      case Tag::finite: return std::to_string(n_);
      case Tag::infinite: return "infinite";
      case Tag::at_least: return ">= " + std::to_string(n_);
      case Tag::minus_infinity: return "-infinity";
    }
    return "?";
  }

 private:
  ExtendedNat(Tag t, long n) : tag_(t), n_(n) {}
  Tag tag_;
  long n_;
};

}  // namespace relsmooth
