// Relative global dimension. For smooth extensions the value is the
// closed-form maximum of the component relative dimensions; for non-smooth
// ones it is infinite; fibers give certified lower bounds at rational
// points regardless of any hypothesis.

#pragma once

#include "relsmooth/smooth.hpp"

namespace relsmooth {

struct FiberGldim {
  ExtendedNat value = ExtendedNat::finite(0);
  std::vector<std::string> notes;
};

// Global dimension of a fiber algebra (a finite product over the ground
// field). The zero algebra contributes 0 (an empty supremum); a regular
// component contributes its Krull dimension; a singular component makes
// the whole thing infinite.
template <ExactField F>
FiberGldim fiber_gldim(const Algebra<F>& fib, const Budget& bud = {}) {
  FiberGldim out;
  if (fib.is_zero_algebra()) return out;

  for (size_t c = 0; c < fib.ncomps(); ++c) {
    try {
      RegularityResult rr = regularity_test(fib.comp(c), bud);
      if (rr.regular && rr.determinate) {
        out.value = ExtendedNat::join(out.value, fib.comp(c).dim());
      } else if (!rr.determinate) {
        out.value = ExtendedNat::join(out.value, ExtendedNat::at_least(0));
        out.notes.push_back("component " + std::to_string(c) + ": " + rr.note);
      } else {
        out.value = ExtendedNat::infinite();
        out.notes.push_back("component " + std::to_string(c) + " is singular");
        return out;
      }
    } catch (const BudgetExhausted& e) {
      out.value = ExtendedNat::join(out.value, ExtendedNat::at_least(0));
      out.notes.push_back("component " + std::to_string(c) + ": " + e.what());
    }
  }
  return out;
}

template <ExactField F>
struct RelGldimReport {
  ExtendedNat value = ExtendedNat::at_least(0);
  SmoothnessReport<F> smoothness;
  std::vector<std::string> hypotheses;  // e.g. "flat:declared"
  std::vector<std::string> notes;
};

template <ExactField F>
RelGldimReport<F> rel_gldim(const RingMap<F>& f) {
  RelGldimReport<F> out;
  out.smoothness = is_smooth(f);
  if (out.smoothness.flatness == Flatness::declared)
    out.hypotheses.push_back("flat:declared");

  switch (out.smoothness.verdict) {
    case SmoothVerdict::not_smooth:
      out.value = ExtendedNat::infinite();
      break;
    case SmoothVerdict::smooth: {
      long m = 0;
      for (const auto& c : out.smoothness.components) m = std::max(m, c.r);
      out.value = ExtendedNat::finite(m);
      break;
    }
    case SmoothVerdict::undetermined:
      out.value = ExtendedNat::at_least(0);
      out.notes.push_back(
          "smoothness undetermined: only the trivial lower bound is known");
      break;
  }
  for (const auto& n : out.smoothness.notes) out.notes.push_back(n);
  return out;
}

// Certified lower bound from fibers at rational points (sound even
// without flatness). Points are (source component, coordinates).
template <ExactField F>
ExtendedNat rel_gldim_sampled_lower_bound(
    const RingMap<F>& f,
    const std::vector<std::pair<size_t, std::vector<typename F::Elem>>>&
        points) {
  ExtendedNat lb = ExtendedNat::finite(0);
  for (const auto& [comp, coords] : points) {
    Algebra<F> fib = fiber_algebra(f, comp, coords);
    lb = ExtendedNat::join(lb, fiber_gldim(fib, f.budget()).value);
  }
  return lb;
}

// Additivity of the relative global dimension under ⊗_k.
template <ExactField F>
struct TensorGldimCheck {
  ExtendedNat left, right, tensor;
  bool additive = false;
  RelGldimReport<F> left_report, right_report, tensor_report;
};

template <ExactField F>
TensorGldimCheck<F> tensor_gldim_check(const RingMap<F>& f,
                                       const RingMap<F>& g) {
  RelGldimReport<F> lf = rel_gldim(f);
  RelGldimReport<F> lg = rel_gldim(g);

  RingMap<F> t = tensor_over_k(f, g);
  // flatness of the factors is inherited by the tensor map
  Flatness ff = lf.smoothness.flatness, fg = lg.smoothness.flatness;
  if (ff == Flatness::failed || fg == Flatness::failed)
    t.flat_hint = Flatness::failed;
  else if (ff == Flatness::verified && fg == Flatness::verified)
    t.flat_hint = Flatness::verified;
  else
    t.flat_hint = Flatness::declared;

  RelGldimReport<F> lt = rel_gldim(t);
  TensorGldimCheck<F> out{lf.value, lg.value, lt.value, false,
                          std::move(lf), std::move(lg), std::move(lt)};
  out.additive = (ExtendedNat::add(out.left, out.right) == out.tensor);
  return out;
}

}  // namespace relsmooth
