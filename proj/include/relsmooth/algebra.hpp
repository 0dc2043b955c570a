// Presented algebras (finite products of quotients of polynomial rings),
// ring maps between them, and the constructions built on top: the graph
// presentation of A over B, tensor products over the base and over the
// ground field, the multiplication kernel, Kähler differentials, map
// kernels and fiber algebras.
//
// A product algebra is a list of components, each its own polynomial
// quotient ring. A ring map carries, for every target component, the
// index of the source component it factors through (sigma) and the images
// of that component's variables. The zero algebra is the empty product.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relsmooth/groebner.hpp"

namespace relsmooth {

enum class Flatness { verified, declared, failed };

inline std::string flatness_str(Flatness f) {
  switch (f) {
    case Flatness::verified: return "verified";
    case Flatness::declared: return "declared";
    case Flatness::failed: return "failed";
  }
  return "?";
}

template <ExactField F>
class AlgebraComponent {
 public:
  AlgebraComponent(PolyRing<F> ring, std::vector<Poly<F>> gens,
                   const Budget& bud = {})
      : ring_(std::move(ring)), gens_(std::move(gens)) {
    gb_ = groebner(ring_, gens_, bud);
  }

  const PolyRing<F>& ring() const { return ring_; }
  const std::vector<Poly<F>>& gens() const { return gens_; }
  const std::vector<Poly<F>>& gb() const { return gb_; }

  bool is_zero_ring() const { return is_unit_ideal(ring_, gb_); }
  ExtendedNat dim() const { return krull_dim(ring_, gb_); }
  Poly<F> nf(const Poly<F>& p) const { return normal_form(ring_, p, gb_); }

 private:
  PolyRing<F> ring_;
  std::vector<Poly<F>> gens_;
  std::vector<Poly<F>> gb_;
};

template <ExactField F>
class Algebra {
 public:
  // Validating factory: every component must be a nonzero ring.
  static Algebra make(F field, std::vector<AlgebraComponent<F>> comps) {
    if (comps.empty())
      throw std::invalid_argument("algebra needs at least one component");
    for (size_t i = 0; i < comps.size(); ++i)
      if (comps[i].is_zero_ring())
        throw std::invalid_argument("algebra component " + std::to_string(i) +
                                    " is the zero ring (unit ideal)");
    return Algebra(std::move(field), std::move(comps));
  }

  static Algebra zero(F field) { return Algebra(std::move(field), {}); }

  const F& field() const { return field_; }
  size_t ncomps() const { return comps_.size(); }
  const AlgebraComponent<F>& comp(size_t i) const { return comps_.at(i); }
  const std::vector<AlgebraComponent<F>>& comps() const { return comps_; }
  bool is_zero_algebra() const { return comps_.empty(); }

  ExtendedNat dim() const {
    ExtendedNat d = ExtendedNat::minus_infinity();
    for (const auto& c : comps_) d = ExtendedNat::join(d, c.dim());
    return d;
  }

 private:
  Algebra(F field, std::vector<AlgebraComponent<F>> comps)
      : field_(std::move(field)), comps_(std::move(comps)) {}

  F field_;
  std::vector<AlgebraComponent<F>> comps_;
};

// The graph presentation of one target component over its source
// component: ring k[$y1..$ym, x1..xn] where the $-variables stand for the
// source generators. rel_ideal generates Ĩ; jac_rows are the relations of
// A over B[x̄] (target relations first, then the graph relations
// $y_i − φ_i), whose x̄-derivatives form the relative Jacobian.
template <ExactField F>
struct RelPresentation {
  PolyRing<F> ring;
  size_t n_src = 0;  // number of leading $-variables
  std::vector<Poly<F>> rel_ideal;
  std::vector<Poly<F>> jac_rows;
  std::vector<Poly<F>> gb;

  size_t n_tgt() const { return ring.nvars() - n_src; }
  Poly<F> nf(const Poly<F>& p) const { return normal_form(ring, p, gb); }
};

template <ExactField F>
class RingMap {
 public:
  // sigma[d] = index of the source component that target component d
  // factors through; images[d][i] = image of the i-th variable of that
  // source component, as a polynomial in the target component's ring.
  RingMap(Algebra<F> src, Algebra<F> dst, std::vector<size_t> sigma,
          std::vector<std::vector<Poly<F>>> images, const Budget& bud = {})
      : src_(std::move(src)),
        dst_(std::move(dst)),
        sigma_(std::move(sigma)),
        images_(std::move(images)),
        budget_(bud) {
    if (sigma_.size() != dst_.ncomps() || images_.size() != dst_.ncomps())
      throw std::invalid_argument("ring map: one sigma/image list per target "
                                  "component required");
    for (size_t d = 0; d < dst_.ncomps(); ++d) {
      if (sigma_[d] >= src_.ncomps())
        throw std::invalid_argument("ring map: sigma out of range");
      const auto& B = src_.comp(sigma_[d]);
      if (images_[d].size() != B.ring().nvars())
        throw std::invalid_argument(
            "ring map: component " + std::to_string(d) + " needs " +
            std::to_string(B.ring().nvars()) + " images");
      // well-definedness: relations of B map into the target ideal
      for (const auto& g : B.gens()) {
        Poly<F> img = B.ring().apply(g, dst_.comp(d).ring(), images_[d]);
        if (!dst_.comp(d).nf(img).is_zero())
          throw std::invalid_argument(
              "ring map does not respect relations: image of " +
              B.ring().str(g) + " is nonzero in target component " +
              std::to_string(d));
      }
    }
    pres_.resize(dst_.ncomps());
  }

  const Algebra<F>& src() const { return src_; }
  const Algebra<F>& dst() const { return dst_; }
  const std::vector<size_t>& sigma() const { return sigma_; }
  const std::vector<std::vector<Poly<F>>>& images() const { return images_; }
  const Budget& budget() const { return budget_; }

  bool assume_flat = false;                // DSL `assume flat`
  std::optional<Flatness> flat_hint;       // inherited (tensor constructions)
  std::map<size_t, long> declared_reldim;  // DSL `reldim` per target component

  // Syntactic identity: same presentation on both sides, each variable
  // mapped to itself.
  bool is_identity() const {
    if (src_.ncomps() != dst_.ncomps()) return false;
    for (size_t d = 0; d < dst_.ncomps(); ++d) {
      if (sigma_[d] != d) return false;
      const auto& B = src_.comp(d);
      const auto& A = dst_.comp(d);
      if (B.ring().vars() != A.ring().vars()) return false;
      if (!ideal_eq(A.ring(), B.gb(), A.gb())) return false;
      for (size_t i = 0; i < B.ring().nvars(); ++i)
        if (!A.ring().eq(images_[d][i], A.ring().var(i))) return false;
    }
    return true;
  }

  const RelPresentation<F>& presentation(size_t d) const {
    if (!pres_.at(d)) pres_[d] = build_presentation(d);
    return *pres_[d];
  }

 private:
  RelPresentation<F> build_presentation(size_t d) const {
    const auto& B = src_.comp(sigma_[d]);
    const auto& A = dst_.comp(d);

    std::vector<std::string> vars;
    for (const auto& y : B.ring().vars()) vars.push_back("$" + y);
    for (const auto& x : A.ring().vars()) vars.push_back(x);
    PolyRing<F> R(src_.field(), vars, MonomialOrder::grevlex());

    size_t m = B.ring().nvars();
    RelPresentation<F> P{R, m, {}, {}, {}};

    // I_B in the $-variables
    std::vector<Poly<F>> yimg;
    for (size_t i = 0; i < m; ++i) yimg.push_back(R.var(i));
    for (const auto& g : B.gens())
      P.rel_ideal.push_back(B.ring().apply(g, R, yimg));

    // graph relations $y_i − φ_i(x̄) and target relations
    std::vector<Poly<F>> ximg;
    for (size_t j = 0; j < A.ring().nvars(); ++j) ximg.push_back(R.var(m + j));
    std::vector<Poly<F>> graph;
    for (size_t i = 0; i < m; ++i)
      graph.push_back(R.sub(R.var(i), A.ring().apply(images_[d][i], R, ximg)));
    std::vector<Poly<F>> tgt;
    for (const auto& g : A.gens()) tgt.push_back(A.ring().apply(g, R, ximg));

    for (const auto& g : graph) P.rel_ideal.push_back(g);
    for (const auto& g : tgt) P.rel_ideal.push_back(g);
    for (const auto& g : tgt) P.jac_rows.push_back(g);
    for (const auto& g : graph) P.jac_rows.push_back(g);

    P.gb = groebner(R, P.rel_ideal, budget_);
    return P;
  }

  Algebra<F> src_, dst_;
  std::vector<size_t> sigma_;
  std::vector<std::vector<Poly<F>>> images_;
  Budget budget_;
  mutable std::vector<std::optional<RelPresentation<F>>> pres_;
};

// ---------------------------------------------------------------------------
// Tensor over the base: A ⊗_B A with components indexed by pairs (d, e)
// of target components sharing a source component (pairs with different
// source components give the zero ring and are omitted). Right-factor
// variables get a prime suffix.

template <ExactField F>
struct TensorOverBase {
  Algebra<F> algebra;                            // A ⊗_B A
  std::vector<std::pair<size_t, size_t>> pairs;  // origin (d, e) per component
  std::optional<RingMap<F>> left_inclusion;      // A → A⊗_B A, a ↦ a⊗1
};

template <ExactField F>
TensorOverBase<F> tensor_over_base(const RingMap<F>& f) {
  const Algebra<F>& A = f.dst();
  const F& k = A.field();
  const Budget& bud = f.budget();

  std::vector<AlgebraComponent<F>> comps;
  std::vector<std::pair<size_t, size_t>> pairs;
  std::vector<size_t> sigma;
  std::vector<std::vector<Poly<F>>> images;

  for (size_t d = 0; d < A.ncomps(); ++d) {
    for (size_t e = 0; e < A.ncomps(); ++e) {
      if (f.sigma()[d] != f.sigma()[e]) continue;
      const auto& Ad = A.comp(d);
      const auto& Ae = A.comp(e);
      std::vector<std::string> vars = Ad.ring().vars();
      for (const auto& x : Ae.ring().vars()) vars.push_back(x + "'");
      PolyRing<F> R(k, vars, MonomialOrder::grevlex());

      std::vector<Poly<F>> limg, rimg;
      for (size_t j = 0; j < Ad.ring().nvars(); ++j) limg.push_back(R.var(j));
      for (size_t j = 0; j < Ae.ring().nvars(); ++j)
        rimg.push_back(R.var(Ad.ring().nvars() + j));

      std::vector<Poly<F>> gens;
      for (const auto& g : Ad.gens())
        gens.push_back(Ad.ring().apply(g, R, limg));
      for (const auto& g : Ae.gens())
        gens.push_back(Ae.ring().apply(g, R, rimg));
      // balancing: the two images of each source variable agree
      const auto& srcring = f.src().comp(f.sigma()[d]).ring();
      for (size_t i = 0; i < srcring.nvars(); ++i) {
        Poly<F> lhs = Ad.ring().apply(f.images()[d][i], R, limg);
        Poly<F> rhs = Ae.ring().apply(f.images()[e][i], R, rimg);
        gens.push_back(R.sub(lhs, rhs));
      }

      AlgebraComponent<F> comp(R, std::move(gens), bud);
      if (comp.is_zero_ring()) continue;  // e.g. disjoint supports over B
      comps.push_back(std::move(comp));
      pairs.emplace_back(d, e);
      sigma.push_back(d);
      images.push_back(std::move(limg));
    }
  }

  TensorOverBase<F> out{comps.empty() ? Algebra<F>::zero(k)
                                      : Algebra<F>::make(k, std::move(comps)),
                        std::move(pairs), std::nullopt};
  out.left_inclusion.emplace(A, out.algebra, std::move(sigma),
                             std::move(images), bud);
  return out;
}

// Kernel of the multiplication map μ: A⊗_B A → A. For each component
// (d, e) of the tensor: on the diagonal the kernel ideal is generated by
// x_j − x_j′ (returned with a Gröbner basis of J + relations); off the
// diagonal μ is zero, so the kernel is the whole component, marked by the
// unit ideal.
template <ExactField F>
struct MultKernel {
  TensorOverBase<F> tensor;
  std::vector<std::vector<Poly<F>>> gens;  // per tensor component
  std::vector<std::vector<Poly<F>>> gb;    // GB of (relations + gens)
};

template <ExactField F>
MultKernel<F> mult_kernel(const RingMap<F>& f) {
  MultKernel<F> out{tensor_over_base(f), {}, {}};
  const auto& T = out.tensor.algebra;
  const Algebra<F>& A = f.dst();
  for (size_t c = 0; c < T.ncomps(); ++c) {
    auto [d, e] = out.tensor.pairs[c];
    const auto& R = T.comp(c).ring();
    std::vector<Poly<F>> gens;
    if (d == e) {
      size_t n = A.comp(d).ring().nvars();
      for (size_t j = 0; j < n; ++j)
        gens.push_back(R.sub(R.var(j), R.var(n + j)));
    } else {
      gens.push_back(R.one());
    }
    std::vector<Poly<F>> full = T.comp(c).gens();
    for (const auto& g : gens) full.push_back(g);
    out.gb.push_back(groebner(R, full, f.budget()));
    out.gens.push_back(std::move(gens));
  }
  return out;
}

// Kähler differentials Ω_{A|B}: per target component, the relative
// Jacobian (rows jac_rows, columns the target variables) whose cokernel
// presents Ω. Entries live in the graph presentation ring and are reduced
// mod the relation ideal.
template <ExactField F>
struct Differentials {
  std::vector<std::vector<std::vector<Poly<F>>>> jac;  // [comp][row][col]
  std::vector<size_t> nrows, ncols;
};

template <ExactField F>
Differentials<F> kahler_differentials(const RingMap<F>& f) {
  Differentials<F> out;
  for (size_t d = 0; d < f.dst().ncomps(); ++d) {
    const auto& P = f.presentation(d);
    std::vector<std::vector<Poly<F>>> M;
    for (const auto& row : P.jac_rows) {
      std::vector<Poly<F>> r;
      for (size_t j = P.n_src; j < P.ring.nvars(); ++j)
        r.push_back(P.nf(P.ring.diff(row, j)));
      M.push_back(std::move(r));
    }
    out.nrows.push_back(M.size());
    out.ncols.push_back(P.n_tgt());
    out.jac.push_back(std::move(M));
  }
  return out;
}

// Kernel of the composite B_{σ(d)} → A_d, as a reduced basis in the
// source component's ring (contains I_B; equals GB(I_B) iff dominant).
template <ExactField F>
std::vector<Poly<F>> component_kernel(const RingMap<F>& f, size_t d) {
  const auto& P = f.presentation(d);
  const auto& Bc = f.src().comp(f.sigma()[d]);

  // contract the graph ideal to the $-variables, then rename back
  std::vector<size_t> drop;
  for (size_t j = P.n_src; j < P.ring.nvars(); ++j) drop.push_back(j);
  auto [RY, gbY] = eliminate_vars(P.ring, P.rel_ideal, drop, f.budget());

  std::vector<Poly<F>> imgs(RY.nvars());
  for (size_t i = 0; i < RY.nvars(); ++i) {
    int j = Bc.ring().var_index(RY.vars()[i].substr(1));  // strip "$"
    if (j < 0) throw std::logic_error("component_kernel: variable bookkeeping");
    imgs[i] = Bc.ring().var(static_cast<size_t>(j));
  }
  std::vector<Poly<F>> ker;
  for (const auto& g : gbY) ker.push_back(RY.apply(g, Bc.ring(), imgs));
  return reduce_basis(Bc.ring(), std::move(ker));
}

// Kernel of B → A, one ideal per source component (reduced basis in that
// component's ring). A source component hit by no target component has
// kernel (1) (its idempotent dies).
template <ExactField F>
std::vector<std::vector<Poly<F>>> map_kernel(const RingMap<F>& f) {
  const Algebra<F>& B = f.src();
  std::vector<std::vector<Poly<F>>> out(B.ncomps());
  std::vector<bool> seen(B.ncomps(), false);

  for (size_t d = 0; d < f.dst().ncomps(); ++d) {
    size_t c = f.sigma()[d];
    std::vector<Poly<F>> ker = component_kernel(f, d);
    if (!seen[c]) {
      out[c] = std::move(ker);
      seen[c] = true;
    } else {
      out[c] = ideal_intersect(B.comp(c).ring(), out[c], ker, f.budget());
    }
  }

  for (size_t c = 0; c < B.ncomps(); ++c)
    if (!seen[c]) out[c] = {B.comp(c).ring().one()};
  return out;
}

// Fiber A ⊗_B k(𝔪) at a rational point of the source component src_comp.
// Components of A factoring through other source components die; so do
// components whose substituted ideal becomes the unit ideal. If nothing
// survives the result is the zero algebra.
template <ExactField F>
Algebra<F> fiber_algebra(const RingMap<F>& f, size_t src_comp,
                         const std::vector<typename F::Elem>& point) {
  const Algebra<F>& B = f.src();
  const Algebra<F>& A = f.dst();
  const F& k = B.field();
  if (src_comp >= B.ncomps())
    throw std::invalid_argument("fiber: no such source component");
  const auto& Bc = B.comp(src_comp);
  if (point.size() != Bc.ring().nvars())
    throw std::invalid_argument("fiber: point needs " +
                                std::to_string(Bc.ring().nvars()) +
                                " coordinates");
  for (const auto& g : Bc.gens())
    if (!k.is_zero(Bc.ring().eval(g, point)))
      throw std::invalid_argument("fiber: point is not on Spec B (relation " +
                                  Bc.ring().str(g) + " nonzero)");

  std::vector<AlgebraComponent<F>> comps;
  for (size_t d = 0; d < A.ncomps(); ++d) {
    if (f.sigma()[d] != src_comp) continue;
    const auto& Ad = A.comp(d);
    std::vector<Poly<F>> gens = Ad.gens();
    for (size_t i = 0; i < point.size(); ++i)
      gens.push_back(
          Ad.ring().sub(f.images()[d][i], Ad.ring().constant(point[i])));
    AlgebraComponent<F> comp(Ad.ring(), std::move(gens), f.budget());
    if (!comp.is_zero_ring()) comps.push_back(std::move(comp));
  }
  if (comps.empty()) return Algebra<F>::zero(k);
  return Algebra<F>::make(k, std::move(comps));
}

// ---------------------------------------------------------------------------
// Tensor over the ground field: (B → A) ⊗_k (B′ → A′) as a map
// B⊗B′ → A⊗A′. Components multiply out pairwise; second-factor variables
// that collide with any first-factor name get a tilde suffix.

template <ExactField F>
Algebra<F> tensor_algebras_over_k(const Algebra<F>& X, const Algebra<F>& Y,
                                  const Budget& bud,
                                  std::vector<std::string>* rename_log = nullptr) {
  const F& k = X.field();
  if (X.is_zero_algebra() || Y.is_zero_algebra()) return Algebra<F>::zero(k);

  std::set<std::string> xnames;
  for (const auto& c : X.comps())
    for (const auto& v : c.ring().vars()) xnames.insert(v);
  auto rename = [&](const std::string& v) {
    std::string w = v;
    while (xnames.count(w)) w += "~";
    return w;
  };

  std::vector<AlgebraComponent<F>> comps;
  for (const auto& cx : X.comps()) {
    for (const auto& cy : Y.comps()) {
      std::vector<std::string> vars = cx.ring().vars();
      for (const auto& v : cy.ring().vars()) {
        std::string w = rename(v);
        if (rename_log && w != v)
          rename_log->push_back(v + " -> " + w);
        vars.push_back(w);
      }
      PolyRing<F> R(k, vars, MonomialOrder::grevlex());
      std::vector<Poly<F>> gens;
      for (const auto& g : cx.gens()) gens.push_back(transfer(cx.ring(), g, R));
      for (const auto& g : cy.gens()) {
        std::vector<Poly<F>> img;
        for (size_t i = 0; i < cy.ring().nvars(); ++i)
          img.push_back(
              R.var(cx.ring().nvars() + i));
        gens.push_back(cy.ring().apply(g, R, img));
      }
      comps.emplace_back(R, std::move(gens), bud);
    }
  }
  return Algebra<F>::make(k, std::move(comps));
}

template <ExactField F>
RingMap<F> tensor_over_k(const RingMap<F>& f, const RingMap<F>& g) {
  if (!(f.src().field() == g.src().field()))
    throw std::invalid_argument("tensor_over_k: ground fields differ");
  const Budget& bud = f.budget();
  Algebra<F> S = tensor_algebras_over_k(f.src(), g.src(), bud);
  Algebra<F> T = tensor_algebras_over_k(f.dst(), g.dst(), bud);

  size_t gsrc = g.src().ncomps(), gdst = g.dst().ncomps();
  std::vector<size_t> sigma;
  std::vector<std::vector<Poly<F>>> images;
  for (size_t d = 0; d < f.dst().ncomps(); ++d) {
    for (size_t e = 0; e < gdst; ++e) {
      size_t tcomp = d * gdst + e;
      const auto& R = T.comp(tcomp).ring();
      sigma.push_back(f.sigma()[d] * gsrc + g.sigma()[e]);

      // the source pair ring is [vars of B_c | vars of B'_c'] with the same
      // rename rule as the targets, so images line up positionally
      std::vector<Poly<F>> img;
      size_t nf = f.dst().comp(d).ring().nvars();
      for (const auto& p : f.images()[d]) {
        // first-factor variables keep their names and positions
        std::vector<Poly<F>> vimgs;
        for (size_t i = 0; i < nf; ++i) vimgs.push_back(R.var(i));
        img.push_back(f.dst().comp(d).ring().apply(p, R, vimgs));
      }
      size_t ng = g.dst().comp(e).ring().nvars();
      for (const auto& p : g.images()[e]) {
        std::vector<Poly<F>> vimgs;
        for (size_t i = 0; i < ng; ++i) vimgs.push_back(R.var(nf + i));
        img.push_back(g.dst().comp(e).ring().apply(p, R, vimgs));
      }
      images.push_back(std::move(img));
    }
  }
  return RingMap<F>(std::move(S), std::move(T), std::move(sigma),
                    std::move(images), bud);
}

}  // namespace relsmooth
