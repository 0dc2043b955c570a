// Executes parsed scripts: declarations build an environment, commands
// append results to a report. A failing command is recorded and execution
// continues with the next statement. Reports serialize deterministically
// (timing fields can be suppressed for byte-for-byte comparisons).

#pragma once

#include <chrono>
#include <map>
#include <sstream>

#include "json.hpp"
#include "relsmooth/dsl.hpp"
#include "relsmooth/fd.hpp"
#include "relsmooth/relgldim.hpp"

namespace relsmooth::engine {

using json = nlohmann::ordered_json;

struct ExecOptions {
  Budget bud;
  size_t cutoff = 8;        // resolution cutoff for relpd / cdim
  bool include_timing = true;
  unsigned long seed = 0;   // accepted for reproducibility flags; unused
};

struct ExecResult {
  json report;
  std::string text;
  bool ok = true;
};

inline json extnat_json(const ExtendedNat& v) {
  json j;
  if (v.is_finite()) {
    j["tag"] = "finite";
    j["value"] = v.value();
  } else if (v.is_infinite()) {
    j["tag"] = "infinite";
  } else if (v.is_bound()) {
    j["tag"] = "at_least";
    j["value"] = v.value();
  } else {
    j["tag"] = "minus_infinity";
  }
  return j;
}

namespace detail {

template <ExactField F>
typename F::Elem const_coeff(const PolyRing<F>& R, const Poly<F>& p) {
  if (!R.is_constant(p))
    throw std::runtime_error("expected a constant, got '" + R.str(p) + "'");
  return p.t.empty() ? R.field().zero() : p.t[0].c;
}

template <ExactField F>
Poly<F> eval_expr(const PolyRing<F>& R, const dsl::ExprPtr& e) {
  using K = dsl::Expr::Kind;
  const F& f = R.field();
  switch (e->kind) {
    case K::num:
      return R.constant(f.from_decimal(e->text));
    case K::var: {
      int i = R.var_index(e->text);
      if (i < 0)
        throw std::runtime_error("unknown variable '" + e->text + "'");
      return R.var(static_cast<size_t>(i));
    }
    case K::neg:
      return R.neg(eval_expr(R, e->a));
    case K::add:
      return R.add(eval_expr(R, e->a), eval_expr(R, e->b));
    case K::sub:
      return R.sub(eval_expr(R, e->a), eval_expr(R, e->b));
    case K::mul:
      return R.mul(eval_expr(R, e->a), eval_expr(R, e->b));
    case K::div: {
      typename F::Elem d = const_coeff(R, eval_expr(R, e->b));
      if (f.is_zero(d)) throw std::runtime_error("division by zero");
      return R.scale(eval_expr(R, e->a), f.inv(d));
    }
    default:
      return R.pow(eval_expr(R, e->a), e->exp);
  }
}

template <ExactField F>
class Runner {
 public:
  Runner(F field, std::string field_desc, const ExecOptions& opt)
      : f_(std::move(field)), fdesc_(std::move(field_desc)), opt_(opt) {}

  ExecResult run(const dsl::Script& script) {
    ExecResult out;
    out.report["schema"] = 1;
    out.report["field"] = fdesc_;
    out.report["budget"] = {{"max_pairs", opt_.bud.max_pairs},
                            {"max_degree", opt_.bud.max_degree},
                            {"cutoff", opt_.cutoff}};
    json results = json::array();

    for (const auto& st : script.stmts) {
      auto t0 = std::chrono::steady_clock::now();
      json entry;
      entry["command"] = stmt_label(st.kind);
      entry["target"] = st.name;
      try {
        bool is_command = dispatch(st, entry);
        if (!is_command) continue;  // silent declaration
        entry["ok"] = true;
      } catch (const std::exception& e) {
        entry["ok"] = false;
        entry["error"] = e.what();
        out.ok = false;
        text_ << stmt_label(st.kind) << " " << st.name
              << ": error: " << e.what() << "\n";
      }
      if (opt_.include_timing) {
        auto t1 = std::chrono::steady_clock::now();
        entry["timing_ms"] =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
      results.push_back(std::move(entry));
    }

    out.report["ok"] = out.ok;
    out.report["results"] = std::move(results);
    out.text = text_.str();
    return out;
  }

 private:
  static const char* stmt_label(dsl::StmtKind k) {
    using SK = dsl::StmtKind;
    switch (k) {
      case SK::field_decl: return "field";
      case SK::ring_decl: return "ring";
      case SK::product_decl: return "product";
      case SK::map_decl: return "map";
      case SK::fd_decl: return "fd";
      case SK::subalgebra_decl: return "subalgebra";
      case SK::module_decl: return "module";
      case SK::assume_flat: return "assume flat";
      case SK::reldim: return "reldim";
      case SK::check_smooth: return "check smooth";
      case SK::relgldim: return "compute relgldim";
      case SK::fibergldim: return "compute fibergldim";
      case SK::tensorcheck: return "compute tensorcheck";
      case SK::relpd: return "compute relpd";
      case SK::cdim: return "compute cdim";
      case SK::relhh: return "compute relhh";
      case SK::gb: return "compute gb";
      case SK::nf: return "compute nf";
      default: return "compute dim";
    }
  }

  template <class M>
  typename M::mapped_type& lookup(M& m, const std::string& name,
                                  const std::string& kind) {
    auto it = m.find(name);
    if (it == m.end())
      throw std::runtime_error(kind + " '" + name +
                               "' is unavailable (its declaration failed)");
    return it->second;
  }

  // returns true for commands (entry filled), false for declarations
  bool dispatch(const dsl::Statement& st, json& entry) {
    using SK = dsl::StmtKind;
    switch (st.kind) {
      case SK::field_decl:
        return false;  // consumed by the field scan before execution
      case SK::ring_decl:
        decl_ring(st);
        return false;
      case SK::product_decl:
        decl_product(st);
        return false;
      case SK::map_decl:
        decl_map(st);
        return false;
      case SK::fd_decl:
        fds_.emplace(st.name,
                     fd_from_presentation(lookup(rings_, st.a, "ring")));
        return false;
      case SK::subalgebra_decl:
        decl_subalgebra(st);
        return false;
      case SK::module_decl:
        decl_module(st);
        return false;
      case SK::assume_flat:
        lookup(maps_, st.name, "map").assume_flat = true;
        return false;
      case SK::reldim:
        lookup(maps_, st.name, "map").declared_reldim[st.comp] = st.num;
        return false;
      case SK::check_smooth:
        cmd_smooth(st, entry);
        return true;
      case SK::relgldim:
        cmd_relgldim(st, entry);
        return true;
      case SK::fibergldim:
        cmd_fibergldim(st, entry);
        return true;
      case SK::tensorcheck:
        cmd_tensorcheck(st, entry);
        return true;
      case SK::relpd:
        cmd_relpd(st, entry);
        return true;
      case SK::cdim:
        cmd_cdim(st, entry);
        return true;
      case SK::relhh:
        cmd_relhh(st, entry);
        return true;
      case SK::gb:
        cmd_gb(st, entry);
        return true;
      case SK::nf:
        cmd_nf(st, entry);
        return true;
      default:
        cmd_dim(st, entry);
        return true;
    }
  }

  // --- declarations ---

  void decl_ring(const dsl::Statement& st) {
    PolyRing<F> R(f_, st.vars);
    std::vector<Poly<F>> rels;
    for (const auto& e : st.exprs) rels.push_back(eval_expr(R, e));
    rings_.emplace(st.name,
                   Algebra<F>::make(
                       f_, {AlgebraComponent<F>(R, std::move(rels),
                                                opt_.bud)}));
  }

  void decl_product(const dsl::Statement& st) {
    std::vector<AlgebraComponent<F>> comps;
    for (const auto& factor : st.vars)
      for (const auto& c : lookup(rings_, factor, "ring").comps())
        comps.push_back(c);
    rings_.emplace(st.name, Algebra<F>::make(f_, std::move(comps)));
  }

  void decl_map(const dsl::Statement& st) {
    const Algebra<F>& src = lookup(rings_, st.a, "ring");
    const Algebra<F>& dst = lookup(rings_, st.b, "ring");
    if (src.ncomps() != 1)
      throw std::runtime_error("map sources must have a single component");
    const auto& SR = src.comp(0).ring();
    size_t n = SR.nvars(), D = dst.ncomps();

    std::vector<std::vector<Poly<F>>> images(D);
    std::vector<bool> seen(n, false);
    for (size_t d = 0; d < D; ++d) images[d].resize(n, dst.comp(d).ring().zero());
    if (st.images.size() != n)
      throw std::runtime_error("map must list an image for each of the " +
                               std::to_string(n) + " source variables");
    for (const auto& img : st.images) {
      int vi = SR.var_index(img.var);
      if (vi < 0)
        throw std::runtime_error("'" + img.var +
                                 "' is not a variable of the source ring");
      if (seen[static_cast<size_t>(vi)])
        throw std::runtime_error("duplicate image for '" + img.var + "'");
      seen[static_cast<size_t>(vi)] = true;
      if (img.bracketed) {
        if (img.rhs.size() != D)
          throw std::runtime_error(
              "bracketed image must list one entry per destination "
              "component (" +
              std::to_string(D) + ")");
      } else if (D != 1) {
        throw std::runtime_error(
            "destination has " + std::to_string(D) +
            " components; use a bracketed image [ ... ]");
      }
      for (size_t d = 0; d < D; ++d)
        images[d][static_cast<size_t>(vi)] =
            eval_expr(dst.comp(d).ring(), img.rhs[img.bracketed ? d : 0]);
    }

    maps_.emplace(st.name,
                  RingMap<F>(src, dst, std::vector<size_t>(D, 0),
                             std::move(images), opt_.bud));
  }

  void decl_subalgebra(const dsl::Statement& st) {
    const FDPresentation<F>& P = lookup(fds_, st.a, "fd algebra");
    std::vector<std::vector<typename F::Elem>> gens;
    if (!st.exprs.empty() && P.source.ncomps() != 1)
      throw std::runtime_error(
          "subalgebra generators require a single-component algebra");
    for (const auto& e : st.exprs)
      gens.push_back(P.vec(0, eval_expr(P.source.comp(0).ring(), e)));
    subs_.emplace(st.name,
                  std::make_pair(st.a, FDSubalgebra<F>(P.algebra, gens)));
  }

  void decl_module(const dsl::Statement& st) {
    const FDPresentation<F>& P = lookup(fds_, st.a, "fd algebra");
    if (P.source.ncomps() != 1)
      throw std::runtime_error("modules require a single-component algebra");
    std::vector<Poly<F>> extra;
    for (const auto& e : st.exprs)
      extra.push_back(eval_expr(P.source.comp(0).ring(), e));
    mods_.emplace(st.name,
                  std::make_pair(st.a, cyclic_module(P, extra, opt_.bud)));
  }

  // --- commands ---

  void cmd_smooth(const dsl::Statement& st, json& entry) {
    const RingMap<F>& f = lookup(maps_, st.name, "map");
    SmoothnessReport<F> rep = is_smooth(f);
    entry["verdict"] = verdict_str(rep.verdict);
    if (rep.verdict == SmoothVerdict::undetermined)
      entry["smooth"] = nullptr;
    else
      entry["smooth"] = rep.verdict == SmoothVerdict::smooth;
    entry["etale"] = rep.etale;
    entry["flatness"] = flatness_str(rep.flatness);
    json comps = json::array();
    for (size_t d = 0; d < rep.components.size(); ++d) {
      const auto& loc = rep.components[d];
      json c;
      c["locus"] = loc.kind == LocusKind::unit
                       ? "unit"
                       : (loc.kind == LocusKind::proper ? "proper" : "defect");
      c["r"] = loc.r;
      c["c"] = loc.c;
      if (loc.r_declared) c["r_declared"] = true;
      if (!loc.equidim_ok) c["equidimensional"] = false;
      if (loc.kind == LocusKind::proper) {
        json g = json::array();
        const auto& R = f.presentation(d).ring;
        for (const auto& p : loc.gb) g.push_back(R.str(p));
        c["locus_gb"] = std::move(g);
      }
      if (!loc.note.empty()) c["note"] = loc.note;
      comps.push_back(std::move(c));
    }
    entry["components"] = std::move(comps);
    entry["notes"] = rep.notes;

    text_ << "check smooth " << st.name << ": " << verdict_str(rep.verdict)
          << " (flatness " << flatness_str(rep.flatness)
          << (rep.etale ? "; etale" : "") << ")\n";
    for (size_t d = 0; d < rep.components.size(); ++d) {
      const auto& loc = rep.components[d];
      text_ << "  component " << d << ": locus="
            << entry["components"][d]["locus"].get<std::string>()
            << " r=" << loc.r << " c=" << loc.c << "\n";
    }
    for (const auto& n : rep.notes) text_ << "  note: " << n << "\n";
  }

  void cmd_relgldim(const dsl::Statement& st, json& entry) {
    const RingMap<F>& f = lookup(maps_, st.name, "map");
    RelGldimReport<F> rep = rel_gldim(f);
    entry["rel_gldim"] = extnat_json(rep.value);
    entry["smooth_verdict"] = verdict_str(rep.smoothness.verdict);
    entry["hypotheses"] = rep.hypotheses;
    entry["notes"] = rep.notes;
    text_ << "compute relgldim " << st.name << ": " << rep.value.str();
    if (!rep.hypotheses.empty()) {
      text_ << " [assuming";
      for (const auto& h : rep.hypotheses) text_ << " " << h;
      text_ << "]";
    }
    text_ << "\n";
  }

  void cmd_fibergldim(const dsl::Statement& st, json& entry) {
    const RingMap<F>& f = lookup(maps_, st.name, "map");
    const auto& SR = f.src().comp(0).ring();
    if (st.exprs.size() != SR.nvars())
      throw std::runtime_error("fiber point must have " +
                               std::to_string(SR.nvars()) + " coordinates");
    std::vector<typename F::Elem> point;
    json pt = json::array();
    for (const auto& e : st.exprs) {
      point.push_back(const_coeff(SR, eval_expr(SR, e)));
      pt.push_back(dsl::expr_str(e));
    }
    Algebra<F> fib = fiber_algebra(f, 0, point);
    FiberGldim rep = fiber_gldim(fib, opt_.bud);
    entry["point"] = std::move(pt);
    entry["fiber_gldim"] = extnat_json(rep.value);
    entry["fiber_components"] = fib.ncomps();
    entry["notes"] = rep.notes;
    text_ << "compute fibergldim " << st.name << " at (";
    for (size_t i = 0; i < st.exprs.size(); ++i)
      text_ << (i ? ", " : "") << dsl::expr_str(st.exprs[i]);
    text_ << "): " << rep.value.str() << "\n";
  }

  void cmd_tensorcheck(const dsl::Statement& st, json& entry) {
    const RingMap<F>& f = lookup(maps_, st.name, "map");
    const RingMap<F>& g = lookup(maps_, st.a, "map");
    TensorGldimCheck<F> tc = tensor_gldim_check(f, g);
    entry["left"] = extnat_json(tc.left);
    entry["right"] = extnat_json(tc.right);
    entry["tensor"] = extnat_json(tc.tensor);
    entry["additive"] = tc.additive;
    text_ << "compute tensorcheck " << st.name << " " << st.a << ": left="
          << tc.left.str() << " right=" << tc.right.str()
          << " tensor=" << tc.tensor.str()
          << (tc.additive ? " (additive)" : " (not additive)") << "\n";
  }

  void cmd_relpd(const dsl::Statement& st, json& entry) {
    auto& [mfd, mod] = lookup(mods_, st.name, "module");
    auto& [sfd, sub] = lookup(subs_, st.a, "subalgebra");
    if (mfd != sfd)
      throw std::runtime_error(
          "module and subalgebra live over different fd algebras");
    const FDPresentation<F>& P = lookup(fds_, mfd, "fd algebra");
    ExtendedNat v = rel_pd(P.algebra, sub, mod, opt_.cutoff);
    entry["rel_pd"] = extnat_json(v);
    entry["cutoff"] = opt_.cutoff;
    text_ << "compute relpd " << st.name << " " << st.a << ": " << v.str()
          << "\n";
  }

  void cmd_cdim(const dsl::Statement& st, json& entry) {
    auto& [sfd, sub] = lookup(subs_, st.a, "subalgebra");
    if (sfd != st.name)
      throw std::runtime_error(
          "subalgebra does not live over this fd algebra");
    const FDPresentation<F>& P = lookup(fds_, st.name, "fd algebra");
    ExtendedNat v = cdim_fd(P.algebra, sub, opt_.cutoff);
    entry["cdim"] = extnat_json(v);
    entry["cutoff"] = opt_.cutoff;
    text_ << "compute cdim " << st.name << " " << st.a << ": " << v.str()
          << "\n";
  }

  void cmd_relhh(const dsl::Statement& st, json& entry) {
    auto& [sfd, sub] = lookup(subs_, st.a, "subalgebra");
    if (sfd != st.name)
      throw std::runtime_error(
          "subalgebra does not live over this fd algebra");
    const FDPresentation<F>& P = lookup(fds_, st.name, "fd algebra");
    BarHomology<F> bar =
        rel_bar_homology(P.algebra, sub, static_cast<size_t>(st.num));
    entry["maxdeg"] = st.num;
    entry["hh_dims"] = bar.dims;
    entry["chain_dims"] = bar.chain_dims;
    text_ << "compute relhh " << st.name << " " << st.a << " " << st.num
          << ":";
    for (long d : bar.dims) text_ << " " << d;
    text_ << "\n";
  }

  void cmd_gb(const dsl::Statement& st, json& entry) {
    const Algebra<F>& A = lookup(rings_, st.name, "ring");
    json comps = json::array();
    text_ << "compute gb " << st.name << ":\n";
    for (size_t c = 0; c < A.ncomps(); ++c) {
      json one = json::array();
      for (const auto& g : A.comp(c).gb()) {
        one.push_back(A.comp(c).ring().str(g));
        text_ << "  [" << c << "] " << A.comp(c).ring().str(g) << "\n";
      }
      comps.push_back(std::move(one));
    }
    entry["components"] = std::move(comps);
  }

  void cmd_nf(const dsl::Statement& st, json& entry) {
    const Algebra<F>& A = lookup(rings_, st.name, "ring");
    if (A.ncomps() != 1)
      throw std::runtime_error("nf requires a single-component ring");
    const auto& comp = A.comp(0);
    Poly<F> p = comp.nf(eval_expr(comp.ring(), st.exprs[0]));
    entry["nf"] = comp.ring().str(p);
    text_ << "compute nf " << st.name << " " << dsl::expr_str(st.exprs[0])
          << ": " << comp.ring().str(p) << "\n";
  }

  void cmd_dim(const dsl::Statement& st, json& entry) {
    const Algebra<F>& A = lookup(rings_, st.name, "ring");
    ExtendedNat v = A.dim();
    entry["dim"] = extnat_json(v);
    text_ << "compute dim " << st.name << ": " << v.str() << "\n";
  }

  F f_;
  std::string fdesc_;
  ExecOptions opt_;
  std::ostringstream text_;
  std::map<std::string, Algebra<F>> rings_;
  std::map<std::string, RingMap<F>> maps_;
  std::map<std::string, FDPresentation<F>> fds_;
  std::map<std::string, std::pair<std::string, FDSubalgebra<F>>> subs_;
  std::map<std::string, std::pair<std::string, FDModule<F>>> mods_;
};

}  // namespace detail

// Scripts run over a single coefficient field: the rationals unless some
// ring refers to a declared GF(p) field.
inline ExecResult execute(const dsl::Script& script, const ExecOptions& opt) {
  std::map<std::string, unsigned long> field_primes;
  unsigned long prime = 0;
  bool mixed = false, any_ring = false;
  for (const auto& st : script.stmts) {
    if (st.kind == dsl::StmtKind::field_decl)
      field_primes[st.name] = st.prime;
    if (st.kind == dsl::StmtKind::ring_decl) {
      unsigned long p =
          st.a == "Q" ? 0
                      : (field_primes.count(st.a) ? field_primes[st.a] : 0);
      if (any_ring && p != prime) mixed = true;
      prime = p;
      any_ring = true;
    }
  }

  if (mixed) {
    ExecResult out;
    out.ok = false;
    out.report["schema"] = 1;
    out.report["ok"] = false;
    out.report["error"] = "all rings in a script must share one field";
    out.text = "error: all rings in a script must share one field\n";
    return out;
  }

  if (prime == 0)
    return detail::Runner<RationalField>(RationalField{}, "Q", opt)
        .run(script);
  return detail::Runner<PrimeField>(PrimeField(prime),
                                    "GF(" + std::to_string(prime) + ")", opt)
      .run(script);
}

}  // namespace relsmooth::engine
