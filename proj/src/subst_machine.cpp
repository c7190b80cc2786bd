#include "dcheck/subst_machine.hpp"

#include <deque>
#include <set>

#include "dcheck/print.hpp"

namespace dcheck {
namespace es {

namespace {

// One negation-reduction axiom at the root, if any (double negation, product,
// sum, abstraction; the tau/definition/injection/case axioms are *not* part
// of negation-reduction).
std::optional<ExprPtr> neg_axiom(const ExprPtr& e) {
  if (e->kind != Kind::Neg) return std::nullopt;
  const auto& c = e->kids[0];
  switch (c->kind) {
    case Kind::Neg: return c->kids[0];
    case Kind::Prod: return sum(neg(c->kids[0]), neg(c->kids[1]));
    case Kind::Sum: return prod(neg(c->kids[0]), neg(c->kids[1]));
    case Kind::Abs: return exi(c->name, c->kids[0], neg(c->kids[1]));
    case Kind::Exi: return abs(c->name, c->kids[0], neg(c->kids[1]));
    default: return std::nullopt;
  }
}

// Positions closed under negation-reduction: product/sum components,
// abstraction bodies, and the negation argument.
std::vector<int> neg_positions(const ExprPtr& e) {
  switch (e->kind) {
    case Kind::Prod:
    case Kind::Sum: return {0, 1};
    case Kind::Abs:
    case Kind::Exi: return {1};
    case Kind::Neg: return {0};
    default: return {};
  }
}

void neg_steps(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (auto r = neg_axiom(e)) out.push_back(*r);
  for (int i : neg_positions(e)) {
    std::vector<ExprPtr> sub;
    neg_steps(e->kids[i], sub);
    for (auto& s : sub) {
      auto kids = e->kids;
      kids[i] = std::move(s);
      out.push_back(with_kids(e, std::move(kids)));
    }
  }
}

}  // namespace

bool neg_reducible(const ExprPtr& e) {
  if (neg_axiom(e)) return true;
  for (int i : neg_positions(e))
    if (neg_reducible(e->kids[i])) return true;
  return false;
}

ExprPtr neg_normalize(const ExprPtr& e) {
  if (auto r = neg_axiom(e)) return neg_normalize(*r);
  auto pos = neg_positions(e);
  if (pos.empty()) return e;
  auto kids = e->kids;
  bool changed = false;
  for (int i : pos) {
    auto r = neg_normalize(kids[i]);
    if (r.get() != kids[i].get()) changed = true;
    kids[i] = std::move(r);
  }
  ExprPtr next = changed ? with_kids(e, std::move(kids)) : e;
  // Reducing children can expose a new root axiom (e.g. ~~[a,b] -> ~[~a+~b]).
  if (auto r = neg_axiom(next)) return neg_normalize(*r);
  return next;
}

std::vector<ExprPtr> neg_reachable(const ExprPtr& e) {
  std::vector<ExprPtr> out;
  std::set<std::string> seen{canonical_print(e)};
  std::deque<ExprPtr> queue{e};
  while (!queue.empty()) {
    ExprPtr cur = queue.front();
    queue.pop_front();
    std::vector<ExprPtr> next;
    neg_steps(cur, next);
    for (auto& n : next) {
      auto key = canonical_print(n);
      if (seen.insert(key).second) {
        out.push_back(n);
        queue.push_back(n);
      }
    }
  }
  return out;
}

namespace {

// Machine axioms at the root: beta steps delay the substitution; projections,
// the remaining negation constants, `use`, and `rem` fire directly.
void root_axioms(const Env& env, const ExprPtr& e, std::vector<ExprPtr>& out) {
  switch (e->kind) {
    case Kind::FVar:
      if (auto d = env.lookup(e->name)) out.push_back(*d);  // use
      break;
    case Kind::Subst:
      if (!occurs_bvar(e->kids[1], 0)) out.push_back(instantiate(e->kids[1], tau()));  // rem
      break;
    case Kind::App: {
      const auto& f = e->kids[0];
      if (f->kind == Kind::Abs || f->kind == Kind::Exi)
        out.push_back(subst(f->name, e->kids[1], f->kids[1]));
      else if (f->kind == Kind::Case && e->kids[1]->kind == Kind::InjL)
        out.push_back(app(f->kids[0], e->kids[1]->kids[0]));
      else if (f->kind == Kind::Case && e->kids[1]->kind == Kind::InjR)
        out.push_back(app(f->kids[1], e->kids[1]->kids[1]));
      break;
    }
    case Kind::Proj1:
      switch (e->kids[0]->kind) {
        case Kind::Def:
        case Kind::Prod:
        case Kind::Sum: out.push_back(e->kids[0]->kids[0]); break;
        default: break;
      }
      break;
    case Kind::Proj2:
      switch (e->kids[0]->kind) {
        case Kind::Def: out.push_back(e->kids[0]->kids[1]); break;
        case Kind::Prod:
        case Kind::Sum: out.push_back(e->kids[0]->kids[1]); break;
        default: break;
      }
      break;
    case Kind::Neg:
      switch (e->kids[0]->kind) {
        case Kind::Tau: out.push_back(tau()); break;
        case Kind::Def:
        case Kind::InjL:
        case Kind::InjR:
        case Kind::Case: out.push_back(e->kids[0]); break;
        default: break;
      }
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<ExprPtr> step(const Env& env, const ExprPtr& a, NameSupply& supply) {
  std::vector<ExprPtr> out;
  root_axioms(env, a, out);
  // Bundled negation rule: any term reachable in >= 1 negation steps.
  for (auto& r : neg_reachable(a)) out.push_back(std::move(r));
  // Structural closure; binder bodies are opened so that every focused term
  // (and hence every recorded definition) stays locally closed.
  int bi = binding_child(a->kind);
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (static_cast<int>(i) == bi) {
      Name x = supply.fresh(a->name);
      Env inner = env;
      if (a->kind == Kind::Subst) inner.push(x, a->kids[0]);
      auto sub = step(inner, open_with(a->kids[i], x), supply);
      for (auto& s : sub) {
        auto kids = a->kids;
        kids[i] = close_over(s, x);
        out.push_back(with_kids(a, std::move(kids)));
      }
    } else {
      auto sub = step(env, a->kids[i], supply);
      for (auto& s : sub) {
        auto kids = a->kids;
        kids[i] = std::move(s);
        out.push_back(with_kids(a, std::move(kids)));
      }
    }
  }
  // Deduplicate alpha-equal successors.
  std::vector<ExprPtr> uniq;
  std::set<std::string> seen;
  for (auto& e : out)
    if (seen.insert(canonical_print(e)).second) uniq.push_back(std::move(e));
  return uniq;
}

ExprPtr dnf(const Env& env, const ExprPtr& a, NameSupply& supply) {
  switch (a->kind) {
    case Kind::Tau:
    case Kind::BVar:
      return a;
    case Kind::FVar:
      if (auto d = env.lookup(a->name)) return dnf(env, *d, supply);
      return a;
    case Kind::Subst: {
      Name x = supply.fresh(a->name);
      Env inner = env;
      inner.push(x, a->kids[0]);
      return dnf(inner, open_with(a->kids[1], x), supply);
    }
    default: {
      auto kids = a->kids;
      int bi = binding_child(a->kind);
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (static_cast<int>(i) == bi) {
          Name x = supply.fresh(a->name);
          kids[i] = close_over(dnf(env, open_with(kids[i], x), supply), x);
        } else {
          kids[i] = dnf(env, kids[i], supply);
        }
      }
      return with_kids(a, std::move(kids));
    }
  }
}

namespace {

// Deterministic single step for the machine normalizer: root axioms first,
// then a maximal negation bundle, then children (body before definition at
// substitution nodes, otherwise left to right).
std::optional<ExprPtr> choose(const Env& env, const ExprPtr& e, NameSupply& supply) {
  {
    std::vector<ExprPtr> ax;
    root_axioms(env, e, ax);
    if (!ax.empty()) return ax.front();
  }
  {
    ExprPtr r = neg_normalize(e);
    if (!alpha_eq(r, e)) return r;
  }
  if (e->kind == Kind::Subst) {
    Name x = supply.fresh(e->name);
    Env inner = env;
    inner.push(x, e->kids[0]);
    if (auto s = choose(inner, open_with(e->kids[1], x), supply))
      return subst(e->name, e->kids[0], close_over(*s, x));
    if (auto s = choose(env, e->kids[0], supply))
      return subst(e->name, *s, e->kids[1]);
    return std::nullopt;
  }
  int bi = binding_child(e->kind);
  for (std::size_t i = 0; i < e->kids.size(); ++i) {
    if (static_cast<int>(i) == bi) {
      Name x = supply.fresh(e->name);
      if (auto s = choose(env, open_with(e->kids[i], x), supply)) {
        auto kids = e->kids;
        kids[i] = close_over(*s, x);
        return with_kids(e, std::move(kids));
      }
    } else if (auto s = choose(env, e->kids[i], supply)) {
      auto kids = e->kids;
      kids[i] = std::move(*s);
      return with_kids(e, std::move(kids));
    }
  }
  return std::nullopt;
}

}  // namespace

ExprPtr es_normalize(const ExprPtr& a, long fuel, long* steps_out) {
  NameSupply supply;
  Env env;
  ExprPtr cur = a;
  long steps = 0;
  for (;;) {
    auto s = choose(env, cur, supply);
    if (!s) break;
    if (steps >= fuel)
      throw FuelExhausted("es_normalize: fuel exhausted after " + std::to_string(steps) + " steps");
    cur = std::move(*s);
    ++steps;
  }
  if (steps_out) *steps_out = steps;
  return dnf(env, cur, supply);
}

}  // namespace es
}  // namespace dcheck
