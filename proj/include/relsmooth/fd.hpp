// Finite-dimensional relative homological algebra over an exact field:
// algebras given by multiplication tensors, subalgebras as closed spans,
// modules as action matrices, relative projectivity by solving for a
// section, the standard splicing resolution with explicit contracting
// homotopies, relative Tor, cdim, and the relative bar complex.

#pragma once

#include "relsmooth/algebra.hpp"
#include "relsmooth/linalg.hpp"

namespace relsmooth {

template <ExactField F>
class FDAlgebra {
 public:
  using Elem = typename F::Elem;
  using Vec = std::vector<Elem>;

  // mult[i][j] = coordinates of e_i · e_j. Checked for shape,
  // commutativity, associativity and the unit law.
  FDAlgebra(F field, std::vector<std::string> labels,
            std::vector<std::vector<Vec>> mult, Vec unit)
      : f_(std::move(field)),
        labels_(std::move(labels)),
        mult_(std::move(mult)),
        unit_(std::move(unit)) {
    size_t d = labels_.size();
    if (mult_.size() != d || unit_.size() != d)
      throw std::invalid_argument("fd algebra: shape mismatch");
    for (const auto& row : mult_) {
      if (row.size() != d)
        throw std::invalid_argument("fd algebra: shape mismatch");
      for (const auto& v : row)
        if (v.size() != d)
          throw std::invalid_argument("fd algebra: shape mismatch");
    }
    for (size_t i = 0; i < d; ++i)
      for (size_t j = i + 1; j < d; ++j)
        if (!vec_eq(mult_[i][j], mult_[j][i]))
          throw std::invalid_argument("fd algebra: not commutative");
    for (size_t j = 0; j < d; ++j) {
      Vec u = mul(unit_, basis(j));
      if (!vec_eq(u, basis(j)))
        throw std::invalid_argument("fd algebra: unit law fails");
    }
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j)
        for (size_t k = 0; k < d; ++k) {
          Vec lhs = mul(mult_[i][j], basis(k));
          Vec rhs = mul(basis(i), mult_[j][k]);
          if (!vec_eq(lhs, rhs))
            throw std::invalid_argument("fd algebra: not associative");
        }
  }

  const F& field() const { return f_; }
  size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec& unit() const { return unit_; }

  Vec basis(size_t i) const {
    Vec v(dim(), f_.zero());
    v[i] = f_.one();
    return v;
  }

  Vec mul(const Vec& u, const Vec& v) const {
    Vec r(dim(), f_.zero());
    for (size_t i = 0; i < dim(); ++i) {
      if (f_.is_zero(u[i])) continue;
      for (size_t j = 0; j < dim(); ++j) {
        if (f_.is_zero(v[j])) continue;
        Elem c = f_.mul(u[i], v[j]);
        for (size_t k = 0; k < dim(); ++k)
          r[k] = f_.add(r[k], f_.mul(c, mult_[i][j][k]));
      }
    }
    return r;
  }

  // matrix of multiplication by a (columns indexed by the basis)
  Matrix<F> left_mult(const Vec& a) const {
    Matrix<F> M = Matrix<F>::zero(f_, dim(), dim());
    for (size_t c = 0; c < dim(); ++c) {
      Vec col = mul(a, basis(c));
      for (size_t r = 0; r < dim(); ++r) M.at(r, c) = col[r];
    }
    return M;
  }

  bool vec_eq(const Vec& a, const Vec& b) const {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!f_.eq(a[i], b[i])) return false;
    return true;
  }

 private:
  F f_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Vec>> mult_;
  Vec unit_;
};

// Subalgebra as the multiplicative closure of the span of 1 and the
// declared generators.
template <ExactField F>
class FDSubalgebra {
 public:
  using Elem = typename F::Elem;
  using Vec = std::vector<Elem>;

  FDSubalgebra(FDAlgebra<F> parent, const std::vector<Vec>& gens)
      : parent_(std::move(parent)), span_(parent_.field(), parent_.dim()) {
    span_.grow(parent_.unit());
    for (const auto& g : gens) span_.grow(g);
    bool grew = true;
    while (grew) {
      grew = false;
      size_t n = span_.dim();
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
          if (span_.grow(parent_.mul(row(i), row(j)))) grew = true;
    }
  }

  const FDAlgebra<F>& parent() const { return parent_; }
  size_t dim() const { return span_.dim(); }
  Vec row(size_t i) const { return span_.basis().row(i); }
  bool contains(const Vec& v) const { return span_.contains(v); }

  // coordinates in the canonical (echelon) basis; throws outside the span
  Vec coords(const Vec& v) const {
    const F& f = parent_.field();
    Vec c(dim(), f.zero());
    Vec rest = v;
    for (size_t i = 0; i < dim(); ++i) {
      size_t p = pivot(i);
      c[i] = rest[p];
      if (f.is_zero(c[i])) continue;
      for (size_t j = 0; j < rest.size(); ++j)
        rest[j] = f.sub(rest[j], f.mul(c[i], span_.basis().at(i, j)));
    }
    for (const auto& x : rest)
      if (!f.is_zero(x))
        throw std::invalid_argument("fd subalgebra: vector not in the span");
    return c;
  }

  // the subalgebra as an algebra in its own basis
  FDAlgebra<F> as_algebra() const {
    const F& f = parent_.field();
    size_t b = dim();
    std::vector<std::string> labels;
    for (size_t i = 0; i < b; ++i) labels.push_back("b" + std::to_string(i));
    std::vector<std::vector<Vec>> mult(b, std::vector<Vec>(b));
    for (size_t i = 0; i < b; ++i)
      for (size_t j = 0; j < b; ++j)
        mult[i][j] = coords(parent_.mul(row(i), row(j)));
    return FDAlgebra<F>(f, std::move(labels), std::move(mult),
                        coords(parent_.unit()));
  }

 private:
  size_t pivot(size_t i) const {
    const F& f = parent_.field();
    for (size_t j = 0; j < parent_.dim(); ++j)
      if (!f.is_zero(span_.basis().at(i, j))) return j;
    throw std::logic_error("fd subalgebra: zero basis row");
  }

  FDAlgebra<F> parent_;
  Subspace<F> span_;
};

template <ExactField F>
class FDModule {
 public:
  using Elem = typename F::Elem;
  using Vec = std::vector<Elem>;

  // action[i] is the matrix of e_i acting on the module.
  FDModule(FDAlgebra<F> alg, size_t dim, std::vector<Matrix<F>> action)
      : alg_(std::move(alg)), m_(dim), action_(std::move(action)) {
    const F& f = alg_.field();
    if (action_.size() != alg_.dim())
      throw std::invalid_argument("fd module: one action matrix per "
                                  "algebra basis element required");
    for (const auto& M : action_)
      if (M.rows() != m_ || M.cols() != m_)
        throw std::invalid_argument("fd module: action shape mismatch");
    if (!action_of(alg_.unit()).eq(f, Matrix<F>::identity(f, m_)))
      throw std::invalid_argument("fd module: unit does not act as identity");
    for (size_t i = 0; i < alg_.dim(); ++i)
      for (size_t j = i; j < alg_.dim(); ++j) {
        Matrix<F> lhs = mat_mul(f, action_[i], action_[j]);
        Matrix<F> rhs = action_of(alg_.mul(alg_.basis(i), alg_.basis(j)));
        if (!lhs.eq(f, rhs))
          throw std::invalid_argument(
              "fd module: action incompatible with multiplication");
      }
  }

  static FDModule regular(const FDAlgebra<F>& a) {
    std::vector<Matrix<F>> act;
    for (size_t i = 0; i < a.dim(); ++i) act.push_back(a.left_mult(a.basis(i)));
    return FDModule(a, a.dim(), std::move(act));
  }

  static FDModule zero(const FDAlgebra<F>& a) {
    std::vector<Matrix<F>> act(a.dim(), Matrix<F>::zero(a.field(), 0, 0));
    return FDModule(a, 0, std::move(act));
  }

  const FDAlgebra<F>& algebra() const { return alg_; }
  size_t dim() const { return m_; }
  const Matrix<F>& action(size_t i) const { return action_.at(i); }

  Matrix<F> action_of(const Vec& a) const {
    const F& f = alg_.field();
    Matrix<F> M = Matrix<F>::zero(f, m_, m_);
    for (size_t i = 0; i < alg_.dim(); ++i) {
      if (f.is_zero(a[i])) continue;
      for (size_t r = 0; r < m_; ++r)
        for (size_t c = 0; c < m_; ++c)
          M.at(r, c) = f.add(M.at(r, c), f.mul(a[i], action_[i].at(r, c)));
    }
    return M;
  }

  Vec act(const Vec& a, const Vec& v) const {
    return mat_vec(alg_.field(), action_of(a), v);
  }

 private:
  FDAlgebra<F> alg_;
  size_t m_;
  std::vector<Matrix<F>> action_;
};

// A module over the parent, viewed as a module over the subalgebra.
template <ExactField F>
FDModule<F> restrict_module(const FDSubalgebra<F>& B, const FDModule<F>& M) {
  std::vector<Matrix<F>> act;
  for (size_t r = 0; r < B.dim(); ++r) act.push_back(M.action_of(B.row(r)));
  return FDModule<F>(B.as_algebra(), M.dim(), std::move(act));
}

// Right kernel with coordinate bookkeeping: row r of `rows` is a kernel
// vector with a 1 at free_cols[r] and zeros at the other free columns, so
// the coordinates of any kernel vector can be read off its free entries.
template <ExactField F>
struct KernelBasis {
  Matrix<F> rows;
  std::vector<size_t> free_cols;
};

template <ExactField F>
KernelBasis<F> kernel_basis(const F& f, Matrix<F> M) {
  std::vector<size_t> pivots = rref(f, M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (size_t p : pivots) is_pivot[p] = true;

  KernelBasis<F> out{Matrix<F>::zero(f, 0, M.cols()), {}};
  for (size_t j = 0; j < M.cols(); ++j) {
    if (is_pivot[j]) continue;
    std::vector<typename F::Elem> v(M.cols(), f.zero());
    v[j] = f.one();
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(M.at(i, j));
    out.rows.append_row(v);
    out.free_cols.push_back(j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Induction A ⊗_B V.

template <ExactField F>
struct InducedModule {
  FDModule<F> module;       // A ⊗_B V as an A-module
  QuotientSpace<F> coords;  // quotient of A ⊗_k V by the balancing span
  Matrix<F> section;        // σ: V → A⊗_B V, v ↦ [1 ⊗ v] (B-linear)
  std::optional<Matrix<F>> mu;  // μ: A⊗_B V → V, a⊗v ↦ a·v (V an A-module)
};

// V is a module over B.as_algebra(); pass the A-module it restricts if the
// multiplication map is wanted.
template <ExactField F>
InducedModule<F> induce(const FDAlgebra<F>& A, const FDSubalgebra<F>& B,
                        const FDModule<F>& V,
                        const FDModule<F>* V_over_A = nullptr) {
  const F& f = A.field();
  size_t d = A.dim(), m = V.dim();
  size_t amb = d * m;
  auto idx = [m](size_t i, size_t j) { return i * m + j; };

  Matrix<F> rel = Matrix<F>::zero(f, 0, amb);
  for (size_t i = 0; i < d; ++i)
    for (size_t r = 0; r < B.dim(); ++r) {
      typename FDAlgebra<F>::Vec w = A.mul(A.basis(i), B.row(r));
      const Matrix<F>& Vr = V.action(r);
      for (size_t j = 0; j < m; ++j) {
        std::vector<typename F::Elem> row(amb, f.zero());
        for (size_t k = 0; k < d; ++k)
          row[idx(k, j)] = f.add(row[idx(k, j)], w[k]);
        for (size_t l = 0; l < m; ++l)
          row[idx(i, l)] = f.sub(row[idx(i, l)], Vr.at(l, j));
        rel.append_row(row);
      }
    }

  QuotientSpace<F> Q(f, amb, std::move(rel));
  size_t t = Q.dim();

  std::vector<Matrix<F>> actions;
  for (size_t a = 0; a < d; ++a) {
    Matrix<F> La = A.left_mult(A.basis(a));
    Matrix<F> Amb = Matrix<F>::zero(f, amb, amb);
    for (size_t k = 0; k < d; ++k)
      for (size_t i = 0; i < d; ++i) {
        if (f.is_zero(La.at(k, i))) continue;
        for (size_t j = 0; j < m; ++j) Amb.at(idx(k, j), idx(i, j)) = La.at(k, i);
      }
    actions.push_back(Q.induced(Amb, Q));
  }

  Matrix<F> section = Matrix<F>::zero(f, t, m);
  for (size_t j = 0; j < m; ++j) {
    std::vector<typename F::Elem> v(amb, f.zero());
    for (size_t i = 0; i < d; ++i) v[idx(i, j)] = A.unit()[i];
    auto q = Q.project(v);
    for (size_t r = 0; r < t; ++r) section.at(r, j) = q[r];
  }

  InducedModule<F> out{FDModule<F>(A, t, std::move(actions)), std::move(Q),
                       std::move(section), std::nullopt};

  if (V_over_A) {
    if (V_over_A->dim() != m)
      throw std::invalid_argument("induce: restricted module dimension "
                                  "mismatch");
    Matrix<F> mu = Matrix<F>::zero(f, m, t);
    for (size_t k = 0; k < t; ++k) {
      std::vector<typename F::Elem> e(t, f.zero());
      e[k] = f.one();
      auto v = out.coords.lift(e);
      std::vector<typename F::Elem> img(m, f.zero());
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < m; ++j) {
          if (f.is_zero(v[idx(i, j)])) continue;
          for (size_t r = 0; r < m; ++r)
            img[r] = f.add(img[r],
                           f.mul(v[idx(i, j)], V_over_A->action(i).at(r, j)));
        }
      for (size_t r = 0; r < m; ++r) mu.at(r, k) = img[r];
    }
    // sanity: μ ∘ σ = id (the canonical B-linear splitting)
    if (!mat_mul(f, mu, out.section).eq(f, Matrix<F>::identity(f, m)))
      throw std::logic_error("induce: splitting identity failed");
    out.mu = std::move(mu);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relative projectivity: solve for an A-linear section of μ_M.

template <ExactField F>
struct RelProjective {
  bool projective = false;
  std::optional<Matrix<F>> section;  // s with μ ∘ s = id, A-linear
};

template <ExactField F>
RelProjective<F> rel_projective_test(const FDAlgebra<F>& A,
                                     const FDSubalgebra<F>& B,
                                     const FDModule<F>& M) {
  const F& f = A.field();
  size_t m = M.dim();
  if (m == 0) return {true, Matrix<F>::zero(f, 0, 0)};

  FDModule<F> MB = restrict_module(B, M);
  InducedModule<F> T = induce(A, B, MB, &M);
  size_t t = T.module.dim();
  const Matrix<F>& mu = *T.mu;

  // unknowns s[p][q] (p < t, q < m), flattened as p*m + q
  Matrix<F> E = Matrix<F>::zero(f, 0, t * m);
  std::vector<typename F::Elem> rhs;

  for (size_t r = 0; r < m; ++r)
    for (size_t q = 0; q < m; ++q) {
      std::vector<typename F::Elem> row(t * m, f.zero());
      for (size_t p = 0; p < t; ++p) row[p * m + q] = mu.at(r, p);
      E.append_row(row);
      rhs.push_back(r == q ? f.one() : f.zero());
    }

  for (size_t a = 0; a < A.dim(); ++a) {
    const Matrix<F>& alpha = M.action(a);
    const Matrix<F>& tau = T.module.action(a);
    for (size_t p = 0; p < t; ++p)
      for (size_t q = 0; q < m; ++q) {
        std::vector<typename F::Elem> row(t * m, f.zero());
        for (size_t l = 0; l < m; ++l)
          row[p * m + l] = f.add(row[p * m + l], alpha.at(l, q));
        for (size_t l = 0; l < t; ++l)
          row[l * m + q] = f.sub(row[l * m + q], tau.at(p, l));
        E.append_row(row);
        rhs.push_back(f.zero());
      }
  }

  auto sol = solve(f, E, rhs);
  if (!sol) return {false, std::nullopt};
  Matrix<F> s = Matrix<F>::zero(f, t, m);
  for (size_t p = 0; p < t; ++p)
    for (size_t q = 0; q < m; ++q) s.at(p, q) = (*sol)[p * m + q];
  return {true, std::move(s)};
}

// ---------------------------------------------------------------------------
// The standard resolution by splicing 0 → K_{i+1} → A⊗_B K_i → K_i → 0.

template <ExactField F>
struct RelResolution {
  FDModule<F> target;              // M
  std::vector<FDModule<F>> terms;  // P_0 .. P_len
  // diff[0]: P_0 → M (augmentation), diff[i]: P_i → P_{i-1}
  std::vector<Matrix<F>> diff;
  // homotopy[i] = h_{i-1}: P_{i-1} → P_i with P_{-1} = M;
  // d_{i+1} h_i + h_{i-1} d_i = id on P_i wherever both sides exist
  std::vector<Matrix<F>> homotopy;
  bool terminated = false;  // terminated_at(length) vs cutoff(length)
  size_t length = 0;
};

template <ExactField F>
RelResolution<F> standard_resolution(const FDAlgebra<F>& A,
                                     const FDSubalgebra<F>& B,
                                     const FDModule<F>& M, size_t cutoff) {
  const F& f = A.field();
  RelResolution<F> res{M, {}, {}, {}, false, 0};

  FDModule<F> K = M;       // K_i, in kernel coordinates from level 2 on
  Matrix<F> prev_iota;     // ι_{i-1}: K_i ↪ P_{i-2} (columns = kernel basis)
  Matrix<F> prev_kappa;    // κ_{i-1}: P_{i-2} → K_i coords, x ↦ x − σμx

  for (size_t i = 1; i <= cutoff + 1; ++i) {
    if (i >= 2 && K.dim() == 0) {
      // kernel vanished: the previously built term closed the resolution
      res.terminated = true;
      res.length = i - 2;
      return res;
    }
    RelProjective<F> pt = rel_projective_test(A, B, K);
    if (pt.projective) {
      size_t n = i - 1;
      if (n == 0) {
        res.terms.push_back(M);
        res.diff.push_back(Matrix<F>::identity(f, M.dim()));
        res.homotopy.push_back(Matrix<F>::identity(f, M.dim()));
      } else {
        res.terms.push_back(K);
        res.diff.push_back(prev_iota);
        res.homotopy.push_back(prev_kappa);
      }
      res.terminated = true;
      res.length = n;
      return res;
    }

    FDModule<F> KB = restrict_module(B, K);
    InducedModule<F> T = induce(A, B, KB, &K);
    size_t t = T.module.dim();
    const Matrix<F>& mu = *T.mu;

    if (i == 1) {
      res.diff.push_back(mu);
      res.homotopy.push_back(T.section);
    } else {
      res.diff.push_back(mat_mul(f, prev_iota, mu));
      res.homotopy.push_back(mat_mul(f, T.section, prev_kappa));
    }
    res.terms.push_back(T.module);

    // next kernel K_{i+1} = ker μ_i with its coordinate bookkeeping
    KernelBasis<F> kb = kernel_basis(f, mu);
    size_t knext = kb.rows.rows();

    Matrix<F> iota = Matrix<F>::zero(f, t, knext);
    for (size_t r = 0; r < knext; ++r)
      for (size_t c = 0; c < t; ++c) iota.at(c, r) = kb.rows.at(r, c);

    // κ_i = "coordinates in K_{i+1} of x − σ_i μ_i x"
    Matrix<F> smu = mat_mul(f, T.section, mu);
    Matrix<F> kappa = Matrix<F>::zero(f, knext, t);
    for (size_t r = 0; r < knext; ++r) {
      size_t fc = kb.free_cols[r];
      for (size_t c = 0; c < t; ++c) {
        typename F::Elem v = f.neg(smu.at(fc, c));
        if (fc == c) v = f.add(v, f.one());
        kappa.at(r, c) = v;
      }
    }

    // A-action on the kernel by restriction
    std::vector<Matrix<F>> kact;
    for (size_t a = 0; a < A.dim(); ++a) {
      Matrix<F> big = mat_mul(f, T.module.action(a), iota);  // t × knext
      Matrix<F> small = Matrix<F>::zero(f, knext, knext);
      for (size_t r = 0; r < knext; ++r)
        for (size_t c = 0; c < knext; ++c)
          small.at(r, c) = big.at(kb.free_cols[r], c);
      // the action must preserve the kernel: ι ∘ small = big
      if (!mat_mul(f, iota, small).eq(f, big))
        throw std::logic_error("standard_resolution: kernel not stable "
                               "under the action");
      kact.push_back(std::move(small));
    }
    K = FDModule<F>(A, knext, std::move(kact));
    prev_iota = std::move(iota);
    prev_kappa = std::move(kappa);
  }

  res.terminated = false;
  res.length = cutoff;
  return res;
}

template <ExactField F>
ExtendedNat rel_pd(const FDAlgebra<F>& A, const FDSubalgebra<F>& B,
                   const FDModule<F>& M, size_t cutoff) {
  RelResolution<F> res = standard_resolution(A, B, M, cutoff);
  if (res.terminated) return ExtendedNat::finite(static_cast<long>(res.length));
  return ExtendedNat::at_least(static_cast<long>(res.length) + 1);
}

// ---------------------------------------------------------------------------
// M ⊗_A N as a quotient of M ⊗_k N by the balancing span.

template <ExactField F>
QuotientSpace<F> module_tensor(const FDModule<F>& M, const FDModule<F>& N) {
  const F& f = M.algebra().field();
  size_t m = M.dim(), n = N.dim(), d = M.algebra().dim();
  size_t amb = m * n;
  auto idx = [n](size_t j, size_t l) { return j * n + l; };

  Matrix<F> rel = Matrix<F>::zero(f, 0, amb);
  for (size_t a = 0; a < d; ++a) {
    const Matrix<F>& Ma = M.action(a);
    const Matrix<F>& Na = N.action(a);
    for (size_t j = 0; j < m; ++j)
      for (size_t l = 0; l < n; ++l) {
        std::vector<typename F::Elem> row(amb, f.zero());
        for (size_t k = 0; k < m; ++k)
          row[idx(k, l)] = f.add(row[idx(k, l)], Ma.at(k, j));
        for (size_t k = 0; k < n; ++k)
          row[idx(j, k)] = f.sub(row[idx(j, k)], Na.at(k, l));
        rel.append_row(row);
      }
  }
  return QuotientSpace<F>(f, amb, std::move(rel));
}

// Relative Tor as homology of M ⊗_A (standard resolution of N). Degrees
// the cutoff leaves undecided are flagged: for the last computed term the
// reported value is only an upper bound, beyond it nothing is known.
struct RelTor {
  std::vector<long> dims;
  std::vector<bool> certified;
  bool resolution_terminated = false;
};

template <ExactField F>
RelTor rel_tor(const FDAlgebra<F>& A, const FDSubalgebra<F>& B,
               const FDModule<F>& M, const FDModule<F>& N, size_t maxdeg,
               size_t cutoff) {
  const F& f = A.field();
  RelResolution<F> res = standard_resolution(A, B, N, cutoff);
  size_t len = res.length;

  size_t top = std::min(maxdeg + 1, len);
  std::vector<QuotientSpace<F>> T;
  for (size_t q = 0; q <= top; ++q)
    T.push_back(module_tensor(M, res.terms[q]));

  // ranks of the induced differentials 1 ⊗ d_q
  std::vector<size_t> rk(top + 2, 0);
  size_t m = M.dim();
  for (size_t q = 1; q <= top; ++q) {
    size_t src_amb = m * res.terms[q].dim();
    size_t dst_n = res.terms[q - 1].dim();
    Matrix<F> Amb = Matrix<F>::zero(f, m * dst_n, src_amb);
    for (size_t j = 0; j < m; ++j)
      for (size_t r = 0; r < dst_n; ++r)
        for (size_t l = 0; l < res.terms[q].dim(); ++l)
          Amb.at(j * dst_n + r, j * res.terms[q].dim() + l) =
              res.diff[q].at(r, l);
    // matrix on the quotients
    const QuotientSpace<F>& src = T[q];
    const QuotientSpace<F>& dst = T[q - 1];
    Matrix<F> D = Matrix<F>::zero(f, dst.dim(), src.dim());
    for (size_t k = 0; k < src.dim(); ++k) {
      std::vector<typename F::Elem> e(src.dim(), f.zero());
      e[k] = f.one();
      auto img = dst.project(mat_vec(f, Amb, src.lift(e)));
      for (size_t r = 0; r < dst.dim(); ++r) D.at(r, k) = img[r];
    }
    rk[q] = rank(f, D);
  }

  RelTor out;
  out.resolution_terminated = res.terminated;
  for (size_t q = 0; q <= maxdeg; ++q) {
    if (q > len) {
      out.dims.push_back(0);
      out.certified.push_back(res.terminated);
      continue;
    }
    long tq = static_cast<long>(T[q].dim());
    long down = static_cast<long>(rk[q]);
    bool have_up = res.terminated || q + 1 <= len;
    long up = (q + 1 <= top) ? static_cast<long>(rk[q + 1]) : 0;
    out.dims.push_back(tq - down - (have_up ? up : 0));
    out.certified.push_back(have_up);
  }
  return out;
}

// ---------------------------------------------------------------------------
// cdim via the enveloping extension: R = A ⊗_B A, S = 1 ⊗ A, A as the
// diagonal R-module.

template <ExactField F>
struct FDEnveloping {
  FDAlgebra<F> ring;        // A ⊗_B A
  FDSubalgebra<F> right;    // image of the right factor
  FDModule<F> diagonal;     // A with (a⊗c)·m = a c m
  QuotientSpace<F> coords;  // A ⊗_k A → ring coordinates
};

template <ExactField F>
FDEnveloping<F> fd_enveloping(const FDAlgebra<F>& A, const FDSubalgebra<F>& B) {
  const F& f = A.field();
  size_t d = A.dim();
  size_t amb = d * d;
  auto idx = [d](size_t i, size_t j) { return i * d + j; };

  Matrix<F> rel = Matrix<F>::zero(f, 0, amb);
  for (size_t i = 0; i < d; ++i)
    for (size_t r = 0; r < B.dim(); ++r) {
      typename FDAlgebra<F>::Vec w = A.mul(A.basis(i), B.row(r));
      for (size_t j = 0; j < d; ++j) {
        typename FDAlgebra<F>::Vec v = A.mul(B.row(r), A.basis(j));
        std::vector<typename F::Elem> row(amb, f.zero());
        for (size_t k = 0; k < d; ++k) {
          row[idx(k, j)] = f.add(row[idx(k, j)], w[k]);
          row[idx(i, k)] = f.sub(row[idx(i, k)], v[k]);
        }
        rel.append_row(row);
      }
    }
  QuotientSpace<F> Q(f, amb, std::move(rel));
  size_t t = Q.dim();

  auto amb_mul = [&](const std::vector<typename F::Elem>& u,
                     const std::vector<typename F::Elem>& v) {
    std::vector<typename F::Elem> out(amb, f.zero());
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        if (f.is_zero(u[idx(i, j)])) continue;
        for (size_t k = 0; k < d; ++k)
          for (size_t l = 0; l < d; ++l) {
            if (f.is_zero(v[idx(k, l)])) continue;
            typename F::Elem c = f.mul(u[idx(i, j)], v[idx(k, l)]);
            typename FDAlgebra<F>::Vec left = A.mul(A.basis(i), A.basis(k));
            typename FDAlgebra<F>::Vec right = A.mul(A.basis(j), A.basis(l));
            for (size_t p = 0; p < d; ++p) {
              if (f.is_zero(left[p])) continue;
              for (size_t q = 0; q < d; ++q)
                out[idx(p, q)] = f.add(
                    out[idx(p, q)], f.mul(c, f.mul(left[p], right[q])));
            }
          }
      }
    return out;
  };

  std::vector<std::vector<std::vector<typename F::Elem>>> mult(
      t, std::vector<std::vector<typename F::Elem>>(t));
  for (size_t p = 0; p < t; ++p)
    for (size_t q = 0; q < t; ++q) {
      std::vector<typename F::Elem> ep(t, f.zero()), eq(t, f.zero());
      ep[p] = f.one();
      eq[q] = f.one();
      mult[p][q] = Q.project(amb_mul(Q.lift(ep), Q.lift(eq)));
    }
  std::vector<typename F::Elem> unit_amb(amb, f.zero());
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      unit_amb[idx(i, j)] = f.mul(A.unit()[i], A.unit()[j]);

  std::vector<std::string> labels;
  for (size_t p = 0; p < t; ++p) labels.push_back("r" + std::to_string(p));
  FDAlgebra<F> ring(f, std::move(labels), std::move(mult),
                    Q.project(unit_amb));

  std::vector<std::vector<typename F::Elem>> right_gens;
  for (size_t j = 0; j < d; ++j) {
    std::vector<typename F::Elem> v(amb, f.zero());
    for (size_t i = 0; i < d; ++i) v[idx(i, j)] = A.unit()[i];
    right_gens.push_back(Q.project(v));
  }
  FDSubalgebra<F> right(ring, right_gens);

  std::vector<Matrix<F>> diag_act;
  for (size_t p = 0; p < t; ++p) {
    std::vector<typename F::Elem> e(t, f.zero());
    e[p] = f.one();
    auto v = Q.lift(e);
    typename FDAlgebra<F>::Vec w(d, f.zero());
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        if (f.is_zero(v[idx(i, j)])) continue;
        typename FDAlgebra<F>::Vec prod = A.mul(A.basis(i), A.basis(j));
        for (size_t k = 0; k < d; ++k)
          w[k] = f.add(w[k], f.mul(v[idx(i, j)], prod[k]));
      }
    diag_act.push_back(A.left_mult(w));
  }
  FDModule<F> diagonal(ring, d, std::move(diag_act));

  return FDEnveloping<F>{std::move(ring), std::move(right),
                         std::move(diagonal), std::move(Q)};
}

template <ExactField F>
ExtendedNat cdim_fd(const FDAlgebra<F>& A, const FDSubalgebra<F>& B,
                    size_t cutoff) {
  FDEnveloping<F> env = fd_enveloping(A, B);
  return rel_pd(env.ring, env.right, env.diagonal, cutoff);
}

// ---------------------------------------------------------------------------
// The relative bar complex and its homology.

template <ExactField F>
struct ChainComplex {
  std::vector<size_t> dims;         // C_0 .. C_top
  std::vector<Matrix<F>> boundary;  // boundary[q]: C_q → C_{q-1}; [0] is 0

  void validate(const F& f) const {
    if (boundary.size() != dims.size())
      throw std::invalid_argument("chain complex: shape mismatch");
    for (size_t q = 0; q < dims.size(); ++q) {
      size_t target = q == 0 ? 0 : dims[q - 1];
      if (boundary[q].rows() != target || boundary[q].cols() != dims[q])
        throw std::invalid_argument("chain complex: boundary shape");
      if (q >= 2) {
        Matrix<F> sq = mat_mul(f, boundary[q - 1], boundary[q]);
        for (size_t i = 0; i < sq.rows(); ++i)
          for (size_t j = 0; j < sq.cols(); ++j)
            if (!f.is_zero(sq.at(i, j)))
              throw std::invalid_argument("chain complex: d∘d ≠ 0");
      }
    }
  }

  // homology dimensions in degrees 0..maxdeg (complex assumed zero above
  // its top term)
  std::vector<long> homology(const F& f, size_t maxdeg) const {
    std::vector<long> h;
    for (size_t q = 0; q <= maxdeg; ++q) {
      if (q >= dims.size()) {
        h.push_back(0);
        continue;
      }
      long down = static_cast<long>(rank(f, boundary[q]));
      long up = (q + 1 < dims.size())
                    ? static_cast<long>(rank(f, boundary[q + 1]))
                    : 0;
      h.push_back(static_cast<long>(dims[q]) - down - up);
    }
    return h;
  }
};

template <ExactField F>
struct BarHomology {
  std::vector<long> dims;        // homology dimensions 0..maxdeg
  ChainComplex<F> complex;       // the balanced bar complex C_0..C_{maxdeg+1}
  std::vector<size_t> chain_dims;
};

template <ExactField F>
BarHomology<F> rel_bar_homology(const FDAlgebra<F>& A, const FDSubalgebra<F>& B,
                                size_t maxdeg, size_t max_chain_dim = 200000) {
  const F& f = A.field();
  size_t d = A.dim();

  // chain space C_q lives on tuples (i_0..i_q), little-endian index
  auto tuple_dim = [&](size_t q) {
    size_t n = 1;
    for (size_t t = 0; t <= q; ++t) n *= d;
    return n;
  };

  std::vector<QuotientSpace<F>> C;
  for (size_t q = 0; q <= maxdeg + 1; ++q) {
    size_t amb = tuple_dim(q);
    if (amb > max_chain_dim)
      throw std::runtime_error(
          "bar complex budget exceeded; largest computed degree " +
          std::to_string(q == 0 ? 0 : q - 1));

    Matrix<F> rel = Matrix<F>::zero(f, 0, amb);
    std::vector<size_t> digits(q + 1, 0);
    for (size_t I = 0; I < amb; ++I) {
      size_t x = I;
      for (size_t t = 0; t <= q; ++t) {
        digits[t] = x % d;
        x /= d;
      }
      for (size_t r = 0; r < B.dim(); ++r) {
        typename FDAlgebra<F>::Vec b = B.row(r);
        // inner adjacencies p, p+1
        for (size_t p = 0; p + 1 <= q; ++p) {
          std::vector<typename F::Elem> row(amb, f.zero());
          typename FDAlgebra<F>::Vec lhs = A.mul(A.basis(digits[p]), b);
          typename FDAlgebra<F>::Vec rhs = A.mul(b, A.basis(digits[p + 1]));
          size_t base_p = 1;
          for (size_t t = 0; t < p; ++t) base_p *= d;
          for (size_t k = 0; k < d; ++k) {
            size_t J = I + (k - digits[p]) * base_p;
            row[J] = f.add(row[J], lhs[k]);
          }
          size_t base_p1 = base_p * d;
          for (size_t k = 0; k < d; ++k) {
            size_t J = I + (k - digits[p + 1]) * base_p1;
            row[J] = f.sub(row[J], rhs[k]);
          }
          rel.append_row(row);
        }
        // cyclic relation: b·a_0 ⊗ … − a_0 ⊗ … ⊗ a_q·b
        {
          std::vector<typename F::Elem> row(amb, f.zero());
          typename FDAlgebra<F>::Vec lhs = A.mul(b, A.basis(digits[0]));
          typename FDAlgebra<F>::Vec rhs = A.mul(A.basis(digits[q]), b);
          for (size_t k = 0; k < d; ++k) {
            size_t J = I + (k - digits[0]);
            row[J] = f.add(row[J], lhs[k]);
          }
          size_t base_q = 1;
          for (size_t t = 0; t < q; ++t) base_q *= d;
          for (size_t k = 0; k < d; ++k) {
            size_t J = I + (k - digits[q]) * base_q;
            row[J] = f.sub(row[J], rhs[k]);
          }
          rel.append_row(row);
        }
      }
    }
    C.emplace_back(f, amb, std::move(rel));
  }

  // ambient Hochschild boundary C_q → C_{q-1}
  auto boundary_amb = [&](size_t q) {
    size_t src = tuple_dim(q), dst = tuple_dim(q - 1);
    Matrix<F> Bd = Matrix<F>::zero(f, dst, src);
    std::vector<size_t> digits(q + 1, 0);
    for (size_t I = 0; I < src; ++I) {
      size_t x = I;
      for (size_t t = 0; t <= q; ++t) {
        digits[t] = x % d;
        x /= d;
      }
      bool neg = false;
      for (size_t p = 0; p + 1 <= q; ++p) {
        // merge positions p, p+1
        typename FDAlgebra<F>::Vec w =
            A.mul(A.basis(digits[p]), A.basis(digits[p + 1]));
        for (size_t k = 0; k < d; ++k) {
          if (f.is_zero(w[k])) continue;
          size_t J = 0, base = 1;
          for (size_t t2 = 0; t2 < q; ++t2) {
            size_t digit = t2 < p ? digits[t2] : (t2 == p ? k : digits[t2 + 1]);
            J += digit * base;
            base *= d;
          }
          Bd.at(J, I) = neg ? f.sub(Bd.at(J, I), w[k]) : f.add(Bd.at(J, I), w[k]);
        }
        neg = !neg;
      }
      // cyclic term: (−1)^q a_q a_0 ⊗ a_1 ⊗ … ⊗ a_{q-1}
      bool cyc_neg = (q % 2) == 1;
      typename FDAlgebra<F>::Vec w = A.mul(A.basis(digits[q]), A.basis(digits[0]));
      for (size_t k = 0; k < d; ++k) {
        if (f.is_zero(w[k])) continue;
        size_t J = 0, base = 1;
        for (size_t t2 = 0; t2 < q; ++t2) {
          size_t digit = t2 == 0 ? k : digits[t2];
          J += digit * base;
          base *= d;
        }
        Bd.at(J, I) =
            cyc_neg ? f.sub(Bd.at(J, I), w[k]) : f.add(Bd.at(J, I), w[k]);
      }
    }
    return Bd;
  };

  ChainComplex<F> cx;
  for (size_t q = 0; q <= maxdeg + 1; ++q) cx.dims.push_back(C[q].dim());
  cx.boundary.push_back(Matrix<F>::zero(f, 0, C[0].dim()));
  for (size_t q = 1; q <= maxdeg + 1; ++q) {
    Matrix<F> Amb = boundary_amb(q);
    // the boundary must send the balancing span into the balancing span
    const Matrix<F>& rels = C[q].relations().basis();
    for (size_t r = 0; r < rels.rows(); ++r) {
      auto img = C[q - 1].project(mat_vec(f, Amb, rels.row(r)));
      for (const auto& xx : img)
        if (!f.is_zero(xx))
          throw std::logic_error("bar complex: boundary does not preserve "
                                 "the balancing relations");
    }
    Matrix<F> D = Matrix<F>::zero(f, C[q - 1].dim(), C[q].dim());
    for (size_t k = 0; k < C[q].dim(); ++k) {
      std::vector<typename F::Elem> e(C[q].dim(), f.zero());
      e[k] = f.one();
      auto img = C[q - 1].project(mat_vec(f, Amb, C[q].lift(e)));
      for (size_t r = 0; r < C[q - 1].dim(); ++r) D.at(r, k) = img[r];
    }
    cx.boundary.push_back(std::move(D));
  }
  cx.validate(f);  // includes b∘b = 0

  BarHomology<F> out{cx.homology(f, maxdeg), std::move(cx), {}};
  for (size_t q = 0; q <= maxdeg + 1; ++q)
    out.chain_dims.push_back(out.complex.dims[q]);
  return out;
}

// ---------------------------------------------------------------------------
// Bridge from presented algebras: basis = standard monomials.

template <ExactField F>
struct FDPresentation {
  Algebra<F> source;
  FDAlgebra<F> algebra;
  std::vector<std::pair<size_t, Monomial>> basis;  // (component, monomial)
  std::vector<size_t> comp_offset;                 // first index per component

  // coordinates of a polynomial living on one component
  std::vector<typename F::Elem> vec(size_t comp, const Poly<F>& p) const {
    const F& f = source.field();
    std::vector<typename F::Elem> v(algebra.dim(), f.zero());
    Poly<F> nf = source.comp(comp).nf(p);
    for (const auto& t : nf.t) {
      bool placed = false;
      for (size_t k = comp_offset[comp];
           k < basis.size() && basis[k].first == comp; ++k)
        if (basis[k].second == t.m) {
          v[k] = f.add(v[k], t.c);
          placed = true;
          break;
        }
      if (!placed)
        throw std::logic_error("fd presentation: non-standard monomial "
                               "survived normal form");
    }
    return v;
  }
};

namespace detail {

// all standard monomials of a zero-dimensional ideal, ascending in the
// ring's order
template <ExactField F>
std::vector<Monomial> standard_monomials(const PolyRing<F>& R,
                                         const std::vector<Poly<F>>& gb) {
  size_t n = R.nvars();
  std::vector<Monomial> lms;
  for (const auto& g : gb) lms.push_back(R.lm(g));

  // per-variable caps from the pure-power leading monomials
  std::vector<unsigned> cap(n, 0);
  for (size_t i = 0; i < n; ++i) {
    bool found = false;
    for (const auto& m : lms) {
      bool pure = m.e[i] > 0;
      for (size_t j = 0; pure && j < n; ++j)
        if (j != i && m.e[j] > 0) pure = false;
      if (pure) {
        cap[i] = found ? std::min(cap[i], m.e[i]) : m.e[i];
        found = true;
      }
    }
    if (!found)
      throw std::invalid_argument(
          "fd bridge: component is not zero-dimensional");
  }

  std::vector<Monomial> out;
  Monomial cur = mono_one(n);
  // odometer over the box below the caps
  while (true) {
    bool standard = true;
    for (const auto& m : lms)
      if (mono_divides(m, cur)) {
        standard = false;
        break;
      }
    if (standard) out.push_back(cur);
    size_t i = 0;
    while (i < n) {
      if (++cur.e[i] < cap[i]) break;
      cur.e[i] = 0;
      ++i;
    }
    if (i == n) break;
  }

  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return R.order().cmp(a, b) < 0;
  });
  return out;
}

}  // namespace detail

template <ExactField F>
FDPresentation<F> fd_from_presentation(const Algebra<F>& A) {
  const F& f = A.field();
  std::vector<std::pair<size_t, Monomial>> basis;
  std::vector<size_t> offset;
  for (size_t c = 0; c < A.ncomps(); ++c) {
    if (A.comp(c).dim() != ExtendedNat::finite(0))
      throw std::invalid_argument("fd bridge: component " + std::to_string(c) +
                                  " is not zero-dimensional");
    offset.push_back(basis.size());
    for (auto& m : detail::standard_monomials(A.comp(c).ring(), A.comp(c).gb()))
      basis.emplace_back(c, std::move(m));
  }

  size_t d = basis.size();
  std::vector<std::string> labels;
  for (const auto& [c, m] : basis) {
    std::string ms = A.comp(c).ring().mono_str(m);
    if (ms.empty()) ms = "1";
    labels.push_back(A.ncomps() > 1 ? "#" + std::to_string(c) + ":" + ms : ms);
  }

  std::vector<std::vector<std::vector<typename F::Elem>>> mult(
      d, std::vector<std::vector<typename F::Elem>>(d));
  for (size_t p = 0; p < d; ++p)
    for (size_t q = 0; q < d; ++q) {
      if (basis[p].first != basis[q].first) {
        mult[p][q].assign(d, f.zero());
        continue;
      }
      size_t c = basis[p].first;
      const auto& R = A.comp(c).ring();
      Poly<F> prod = R.mul(R.monomial(basis[p].second, f.one()),
                           R.monomial(basis[q].second, f.one()));
      std::vector<typename F::Elem> v(d, f.zero());
      Poly<F> nf = A.comp(c).nf(prod);
      for (const auto& t : nf.t) {
        bool placed = false;
        for (size_t k = offset[c]; k < d && basis[k].first == c; ++k)
          if (basis[k].second == t.m) {
            v[k] = t.c;
            placed = true;
            break;
          }
        if (!placed)
          throw std::logic_error("fd bridge: non-standard monomial survived");
      }
      mult[p][q] = std::move(v);
    }

  std::vector<typename F::Elem> unit(d, f.zero());
  for (size_t c = 0; c < A.ncomps(); ++c) {
    const auto& R = A.comp(c).ring();
    Poly<F> one_nf = A.comp(c).nf(R.one());
    for (const auto& t : one_nf.t)
      for (size_t k = offset[c]; k < d && basis[k].first == c; ++k)
        if (basis[k].second == t.m) unit[k] = t.c;
  }

  return FDPresentation<F>{
      A, FDAlgebra<F>(f, std::move(labels), std::move(mult), std::move(unit)),
      std::move(basis), std::move(offset)};
}

// Cyclic module A/(extra) for a single-component presented algebra.
template <ExactField F>
FDModule<F> cyclic_module(const FDPresentation<F>& P,
                          const std::vector<Poly<F>>& extra,
                          const Budget& bud = {}) {
  if (P.source.ncomps() != 1)
    throw std::invalid_argument(
        "cyclic module: single-component algebras only");
  const F& f = P.source.field();
  const auto& comp = P.source.comp(0);
  const auto& R = comp.ring();

  std::vector<Poly<F>> gens = comp.gens();
  for (const auto& g : extra) gens.push_back(g);
  auto gb = groebner(R, gens, bud);
  if (is_unit_ideal(R, gb)) return FDModule<F>::zero(P.algebra);

  std::vector<Monomial> mbasis = detail::standard_monomials(R, gb);
  size_t m = mbasis.size();

  std::vector<Matrix<F>> act;
  for (size_t a = 0; a < P.algebra.dim(); ++a) {
    Matrix<F> M = Matrix<F>::zero(f, m, m);
    for (size_t j = 0; j < m; ++j) {
      Poly<F> prod = R.mul(R.monomial(P.basis[a].second, f.one()),
                           R.monomial(mbasis[j], f.one()));
      Poly<F> nf = normal_form(R, prod, gb);
      for (const auto& t : nf.t) {
        bool placed = false;
        for (size_t k = 0; k < m; ++k)
          if (mbasis[k] == t.m) {
            M.at(k, j) = t.c;
            placed = true;
            break;
          }
        if (!placed)
          throw std::logic_error("cyclic module: non-standard monomial");
      }
    }
    act.push_back(std::move(M));
  }
  return FDModule<F>(P.algebra, m, std::move(act));
}

}  // namespace relsmooth
