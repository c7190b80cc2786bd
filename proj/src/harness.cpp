#include "dcheck/harness.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "dcheck/norming.hpp"
#include "dcheck/print.hpp"
#include "dcheck/reduce.hpp"
#include "dcheck/subst_machine.hpp"
#include "dcheck/surface.hpp"

namespace dcheck {

namespace {

// Lower a parsed expression treating every unknown identifier as free; used
// by the print/parse round-trip property.
ExprPtr surf_lower(const SPtr& e, std::vector<Name>& scope) {
  auto rec = [&](const SPtr& k) { return surf_lower(k, scope); };
  switch (e->k) {
    case SNode::K::Tau: return tau();
    case SNode::K::Ident:
      for (std::size_t i = scope.size(); i-- > 0;)
        if (scope[i] == e->name) return bvar(static_cast<int>(scope.size() - 1 - i));
      return fvar(e->name);
    case SNode::K::Abs:
    case SNode::K::Exi: {
      ExprPtr dom = rec(e->kids[0]);
      scope.push_back(e->name);
      ExprPtr body = surf_lower(e->kids[1], scope);
      scope.pop_back();
      return e->k == SNode::K::Abs ? abs(e->name, dom, body) : exi(e->name, dom, body);
    }
    case SNode::K::PDef: {
      ExprPtr w = rec(e->kids[0]);
      ExprPtr p = rec(e->kids[1]);
      scope.push_back(e->name);
      ExprPtr t = surf_lower(e->kids[2], scope);
      scope.pop_back();
      return pdef(e->name, w, p, t);
    }
    case SNode::K::App: return app(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::Proj1: return proj1(rec(e->kids[0]));
    case SNode::K::Proj2: return proj2(rec(e->kids[0]));
    case SNode::K::Prod: return prod(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::Sum: return sum(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::InjL: return injl(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::InjR: return injr(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::Case: return kase(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::Neg: return neg(rec(e->kids[0]));
    case SNode::K::SchemeInst: throw std::invalid_argument("unexpected scheme instantiation");
  }
  throw std::invalid_argument("unreachable");
}

}  // namespace

ExprPtr Generator::gen_small_type(const Context& ctx) {
  std::vector<ExprPtr> tau_typed;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (ctx.entry(i).second->kind == Kind::Tau) tau_typed.push_back(fvar(ctx.entry(i).first));
  switch (rng_() % 3) {
    case 0:
      return tau();
    case 1:
      if (!tau_typed.empty()) return tau_typed[rng_() % tau_typed.size()];
      return tau();
    default: {
      ExprPtr dom = tau_typed.empty() || rng_() % 2 ? tau() : tau_typed[rng_() % tau_typed.size()];
      return abs("x", dom, tau());
    }
  }
}

std::pair<ExprPtr, ExprPtr> Generator::gen(const Context& ctx, int depth) {
  auto leaf = [&]() -> std::pair<ExprPtr, ExprPtr> {
    if (!ctx.empty() && rng_() % 3 != 0) {
      std::size_t i = rng_() % ctx.size();
      return {fvar(ctx.entry(i).first), ctx.entry(i).second};
    }
    return {tau(), tau()};
  };
  if (depth <= 0) return leaf();

  switch (rng_() % 13) {
    case 0:
      return leaf();
    case 1:    // universal abstraction
    case 2: {  // existential abstraction
      bool uni = rng_() % 2 == 0;
      ExprPtr dom = gen(ctx, depth - 1).first;
      Name x = "v" + std::to_string(counter_++);
      Context inner = ctx;
      inner.extend(x, dom);
      auto [b, tb] = gen(inner, depth - 1);
      ExprPtr body = close_over(b, x);
      ExprPtr tbody = close_over(tb, x);
      return {uni ? abs(x, dom, body) : exi(x, dom, body), abs(x, dom, tbody)};
    }
    case 3: {  // beta redex
      auto [u, tu] = gen(ctx, depth - 1);
      Name x = "v" + std::to_string(counter_++);
      Context inner = ctx;
      inner.extend(x, tu);
      auto [b, tb] = gen(inner, depth - 1);
      ExprPtr f = abs(x, tu, close_over(b, x));
      return {app(f, u), subst_free(tb, x, u)};
    }
    case 4: {  // product
      auto [a, ta] = gen(ctx, depth - 1);
      auto [b, tb] = gen(ctx, depth - 1);
      return {prod(a, b), prod(ta, tb)};
    }
    case 5: {  // sum (also typed by a product)
      auto [a, ta] = gen(ctx, depth - 1);
      auto [b, tb] = gen(ctx, depth - 1);
      return {sum(a, b), prod(ta, tb)};
    }
    case 6: {  // injections
      auto [v, tv] = gen(ctx, depth - 1);
      ExprPtr o = gen(ctx, depth - 1).first;
      if (rng_() % 2) return {injl(v, o), sum(tv, o)};
      return {injr(o, v), sum(o, tv)};
    }
    case 7: {  // protected definition (constant template)
      auto [w, tw] = gen(ctx, depth - 1);
      auto [c, tc] = gen(ctx, depth - 1);
      Name x = "v" + std::to_string(counter_++);
      return {pdef(x, w, c, tc), exi(x, tw, tc)};
    }
    case 8: {  // projection of a pair-former
      auto [a, ta] = gen(ctx, depth - 1);
      auto [b, tb] = gen(ctx, depth - 1);
      ExprPtr base = rng_() % 2 ? prod(a, b) : sum(a, b);
      if (rng_() % 2) return {proj1(base), ta};
      return {proj2(base), tb};
    }
    case 9: {  // projection of a protected definition
      auto [w, tw] = gen(ctx, depth - 1);
      auto [c, tc] = gen(ctx, depth - 1);
      Name x = "v" + std::to_string(counter_++);
      ExprPtr pd = pdef(x, w, c, tc);
      if (rng_() % 2) return {proj1(pd), tw};
      return {proj2(pd), tc};
    }
    case 10: {  // case distinction, sometimes applied to an injection
      if (depth < 2) return leaf();
      auto [u, tu] = gen(ctx, depth - 2);
      auto [b1, db] = gen(ctx, depth - 2);
      ExprPtr c2 = gen(ctx, depth - 2).first;
      switch (rng_() % 3) {
        case 0: {  // applied, left branch fires
          ExprPtr k = kase(abs("x", tu, b1), abs("y", c2, b1));
          return {app(k, injl(u, c2)), db};
        }
        case 1: {  // applied, right branch fires
          ExprPtr k = kase(abs("x", c2, b1), abs("y", tu, b1));
          return {app(k, injr(c2, u)), db};
        }
        default: {  // unapplied
          ExprPtr k = kase(abs("x", tu, b1), abs("y", c2, b1));
          return {k, abs("z", sum(tu, c2), db)};
        }
      }
    }
    case 11: {  // negation (type-transparent)
      auto [a, ta] = gen(ctx, depth - 1);
      return {neg(a), ta};
    }
    default: {  // apply a context variable of matching simple domain
      std::vector<std::size_t> cands;
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        const auto& t = ctx.entry(i).second;
        if (t->kind == Kind::Abs && t->kids[0]->kind == Kind::Tau) cands.push_back(i);
      }
      if (cands.empty()) return leaf();
      std::size_t i = cands[rng_() % cands.size()];
      const auto& t = ctx.entry(i).second;
      ExprPtr arg = tau();
      return {app(fvar(ctx.entry(i).first), arg), instantiate(t->kids[1], arg)};
    }
  }
}

Judgment Generator::next() {
  Context ctx;
  int n = 2 + static_cast<int>(rng_() % 2);
  for (int i = 0; i < n; ++i) ctx.extend("p" + std::to_string(counter_++), tau());
  for (int i = 0; i < 2; ++i) ctx.extend("g" + std::to_string(counter_++), gen_small_type(ctx));
  int depth = 1 + static_cast<int>(rng_() % cfg_.max_depth);
  auto [e, t] = gen(ctx, depth);
  return {ctx, e, t};
}

ExprPtr gen_raw(std::mt19937_64& rng, int depth, const std::vector<Name>& frees, bool allow_subst) {
  std::function<ExprPtr(int, int)> go = [&](int d, int nbound) -> ExprPtr {
    auto leaf = [&]() -> ExprPtr {
      switch (rng() % 3) {
        case 0:
          return tau();
        case 1:
          if (nbound > 0) return bvar(static_cast<int>(rng() % nbound));
          [[fallthrough]];
        default:
          if (!frees.empty()) return fvar(frees[rng() % frees.size()]);
          return tau();
      }
    };
    if (d <= 0) return leaf();
    switch (rng() % (allow_subst ? 15 : 14)) {
      case 0: return leaf();
      case 1: return abs("x", go(d - 1, nbound), go(d - 1, nbound + 1));
      case 2: return exi("x", go(d - 1, nbound), go(d - 1, nbound + 1));
      case 3: return app(go(d - 1, nbound), go(d - 1, nbound));
      case 4: return pdef("x", go(d - 1, nbound), go(d - 1, nbound), go(d - 1, nbound + 1));
      case 5: return proj1(go(d - 1, nbound));
      case 6: return proj2(go(d - 1, nbound));
      case 7: return prod(go(d - 1, nbound), go(d - 1, nbound));
      case 8: return sum(go(d - 1, nbound), go(d - 1, nbound));
      case 9: return injl(go(d - 1, nbound), go(d - 1, nbound));
      case 10: return injr(go(d - 1, nbound), go(d - 1, nbound));
      case 11: return kase(go(d - 1, nbound), go(d - 1, nbound));
      case 12: return neg(go(d - 1, nbound));
      case 13: return neg(go(d - 1, nbound));
      default: return subst("x", go(d - 1, nbound), go(d - 1, nbound + 1));
    }
  };
  return go(depth, 0);
}

namespace {

using FailFn = std::function<bool(const Judgment&)>;

// Replace the subject by a smaller valid subexpression while the property
// still fails.
Judgment shrink(Judgment j, const FailFn& fails, long fuel) {
  Checker ck(fuel);
  bool improved = true;
  while (improved) {
    improved = false;
    const ExprPtr e = j.subject;
    int bi = binding_child(e->kind);
    for (std::size_t i = 0; i < e->kids.size(); ++i) {
      ExprPtr cand = static_cast<int>(i) == bi ? instantiate(e->kids[i], tau()) : e->kids[i];
      Judgment j2{j.ctx, cand, nullptr};
      bool still = false;
      try {
        still = ck.valid(j.ctx, cand) && fails(j2);
      } catch (const FuelExhausted&) {
        still = false;
      }
      if (still) {
        j.subject = cand;
        improved = true;
        break;
      }
    }
  }
  return j;
}

}  // namespace

std::vector<std::string> property_names() {
  return {"confluence", "subject-reduction", "uniqueness", "norming",
          "sn-fuel",    "es-oracle",         "classifier", "roundtrip"};
}

PropertyReport run_property(const std::string& name, const GenConfig& cfg) {
  PropertyReport rep;
  rep.name = name;
  Generator g(cfg);
  Checker ck(cfg.fuel);
  std::mt19937_64 raw_rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);

  auto record = [&](const Judgment& j, const FailFn& fails, const std::string& what) {
    ++rep.failures;
    if (rep.notes.size() < 5) {
      Judgment s = shrink(j, fails, cfg.fuel);
      rep.notes.push_back(what + ": " + print(s.subject) + "  [ctx: " + print_context(s.ctx) + "]");
    }
  };

  FailFn fails;
  bool uses_generator = true;

  if (name == "confluence") {
    fails = [&](const Judgment& j) {
      ExprPtr lo = normalize(j.subject, cfg.fuel, Strategy::LeftmostOutermost);
      ExprPtr ri = normalize(j.subject, cfg.fuel, Strategy::RightmostInnermost);
      return !alpha_eq(lo, ri);
    };
  } else if (name == "subject-reduction") {
    fails = [&](const Judgment& j) {
      auto r0 = ck.infer(j.ctx, j.subject);
      if (!r0.ok()) return true;
      for (const auto& rd : redexes(j.subject)) {
        ExprPtr e1 = step_at(j.subject, rd.path, rd.rule);
        auto r1 = ck.infer(j.ctx, e1);
        if (!r1.ok() || !converts(r0.value(), r1.value(), cfg.fuel)) return true;
      }
      return false;
    };
  } else if (name == "uniqueness") {
    fails = [&](const Judgment& j) {
      auto r0 = ck.infer(j.ctx, j.subject);
      if (!r0.ok()) return true;
      ExprPtr nf = normalize(j.subject, cfg.fuel);
      auto r1 = ck.infer(j.ctx, nf);
      return !r1.ok() || !converts(r0.value(), r1.value(), cfg.fuel);
    };
  } else if (name == "norming") {
    fails = [&](const Judgment& j) {
      auto ns = norm(j.ctx, j.subject);
      if (!ns) return true;  // valid terms must be normable
      auto r0 = ck.infer(j.ctx, j.subject);
      if (!r0.ok()) return true;
      auto nt = norm(j.ctx, r0.value());
      if (!nt || !norm_eq(*ns, *nt)) return true;  // norm agrees with the type's norm
      int checked = 0;
      for (const auto& rd : redexes(j.subject)) {
        if (++checked > 8) break;
        auto n1 = norm(j.ctx, step_at(j.subject, rd.path, rd.rule));
        if (!n1 || !norm_eq(*ns, *n1)) return true;  // reduction preserves the norm
      }
      return false;
    };
  } else if (name == "sn-fuel") {
    fails = [&](const Judgment& j) {
      long steps = 0;
      normalize(j.subject, cfg.fuel, Strategy::LeftmostOutermost, &steps);
      rep.max_steps = std::max(rep.max_steps, steps);
      return false;  // FuelExhausted is caught by the driver below
    };
  } else if (name == "es-oracle") {
    fails = [&](const Judgment& j) {
      ExprPtr nf = normalize(j.subject, cfg.fuel);
      ExprPtr mnf = es::es_normalize(j.subject, cfg.fuel);
      return !alpha_eq(nf, mnf);
    };
  } else if (name == "classifier") {
    fails = [&](const Judgment& j) {
      ExprPtr closed = j.ctx.abstraction(j.subject);
      bool says_reducible = classify(closed) == NormalClass::Reducible;
      if (says_reducible != !redexes(closed).empty()) return true;
      ExprPtr nf = normalize(closed, cfg.fuel);
      if (!redexes(nf).empty()) return true;
      return classify(nf) == NormalClass::Reducible;
    };
  } else if (name == "roundtrip") {
    fails = [&](const Judgment& j) {
      SPtr p = parse_expr(print(j.subject));
      std::vector<Name> scope;
      return !alpha_eq(surf_lower(p, scope), j.subject);
    };
  } else {
    throw std::invalid_argument("unknown property: " + name);
  }

  std::vector<Name> raw_frees = {"a", "b", "c"};
  for (int i = 0; i < cfg.cases; ++i) {
    Judgment j;
    if (name == "es-oracle" && i % 2 == 1) {
      // Alternate with raw (not necessarily valid) terms that happen to
      // normalize within fuel.
      ExprPtr raw = gen_raw(raw_rng, 1 + static_cast<int>(raw_rng() % 5), raw_frees, false);
      try {
        normalize(raw, cfg.fuel);
      } catch (const FuelExhausted&) {
        j = g.next();  // fall back to a valid term
        raw = j.subject;
      }
      j.subject = raw;
    } else {
      j = g.next();
    }
    (void)uses_generator;
    ++rep.cases;
    try {
      if (fails(j)) record(j, fails, "property violated");
    } catch (const FuelExhausted&) {
      record(j, fails, "fuel exhausted");
    }
  }
  return rep;
}

}  // namespace dcheck
