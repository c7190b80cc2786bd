#include "dcheck/reduce.hpp"

#include <functional>

namespace dcheck {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Beta1: return "beta1";
    case Rule::Beta2: return "beta2";
    case Rule::Beta3: return "beta3";
    case Rule::Beta4: return "beta4";
    case Rule::Pi1: return "pi1";
    case Rule::Pi2: return "pi2";
    case Rule::Pi3: return "pi3";
    case Rule::Pi4: return "pi4";
    case Rule::Pi5: return "pi5";
    case Rule::Pi6: return "pi6";
    case Rule::Nu1: return "nu1";
    case Rule::Nu2: return "nu2";
    case Rule::Nu3: return "nu3";
    case Rule::Nu4: return "nu4";
    case Rule::Nu5: return "nu5";
    case Rule::Nu6: return "nu6";
    case Rule::Nu7: return "nu7";
    case Rule::Nu8: return "nu8";
    case Rule::Nu9: return "nu9";
    case Rule::Nu10: return "nu10";
  }
  return "?";
}

std::optional<Rule> root_redex(const ExprPtr& e) {
  switch (e->kind) {
    case Kind::App: {
      const auto& f = e->kids[0];
      const auto& a = e->kids[1];
      if (f->kind == Kind::Abs) return Rule::Beta1;
      if (f->kind == Kind::Exi) return Rule::Beta2;
      if (f->kind == Kind::Case && a->kind == Kind::InjL) return Rule::Beta3;
      if (f->kind == Kind::Case && a->kind == Kind::InjR) return Rule::Beta4;
      return std::nullopt;
    }
    case Kind::Proj1:
      switch (e->kids[0]->kind) {
        case Kind::Def: return Rule::Pi1;
        case Kind::Prod: return Rule::Pi3;
        case Kind::Sum: return Rule::Pi5;
        default: return std::nullopt;
      }
    case Kind::Proj2:
      switch (e->kids[0]->kind) {
        case Kind::Def: return Rule::Pi2;
        case Kind::Prod: return Rule::Pi4;
        case Kind::Sum: return Rule::Pi6;
        default: return std::nullopt;
      }
    case Kind::Neg:
      switch (e->kids[0]->kind) {
        case Kind::Neg: return Rule::Nu1;
        case Kind::Prod: return Rule::Nu2;
        case Kind::Sum: return Rule::Nu3;
        case Kind::Abs: return Rule::Nu4;
        case Kind::Exi: return Rule::Nu5;
        case Kind::Tau: return Rule::Nu6;
        case Kind::Def: return Rule::Nu7;
        case Kind::InjL: return Rule::Nu8;
        case Kind::InjR: return Rule::Nu9;
        case Kind::Case: return Rule::Nu10;
        default: return std::nullopt;
      }
    default:
      return std::nullopt;
  }
}

namespace {

ExprPtr contract(const ExprPtr& e, Rule rule) {
  auto bad = [&] { throw std::invalid_argument(std::string("rule ") + rule_name(rule) + " does not apply"); };
  auto expect = [&](bool cond) {
    if (!cond) bad();
  };
  switch (rule) {
    case Rule::Beta1:
    case Rule::Beta2: {
      expect(e->kind == Kind::App);
      const auto& f = e->kids[0];
      expect(f->kind == (rule == Rule::Beta1 ? Kind::Abs : Kind::Exi));
      return instantiate(f->kids[1], e->kids[1]);
    }
    case Rule::Beta3: {
      expect(e->kind == Kind::App && e->kids[0]->kind == Kind::Case && e->kids[1]->kind == Kind::InjL);
      return app(e->kids[0]->kids[0], e->kids[1]->kids[0]);
    }
    case Rule::Beta4: {
      expect(e->kind == Kind::App && e->kids[0]->kind == Kind::Case && e->kids[1]->kind == Kind::InjR);
      return app(e->kids[0]->kids[1], e->kids[1]->kids[1]);
    }
    case Rule::Pi1:
      expect(e->kind == Kind::Proj1 && e->kids[0]->kind == Kind::Def);
      return e->kids[0]->kids[0];
    case Rule::Pi2:
      expect(e->kind == Kind::Proj2 && e->kids[0]->kind == Kind::Def);
      return e->kids[0]->kids[1];
    case Rule::Pi3:
      expect(e->kind == Kind::Proj1 && e->kids[0]->kind == Kind::Prod);
      return e->kids[0]->kids[0];
    case Rule::Pi4:
      expect(e->kind == Kind::Proj2 && e->kids[0]->kind == Kind::Prod);
      return e->kids[0]->kids[1];
    case Rule::Pi5:
      expect(e->kind == Kind::Proj1 && e->kids[0]->kind == Kind::Sum);
      return e->kids[0]->kids[0];
    case Rule::Pi6:
      expect(e->kind == Kind::Proj2 && e->kids[0]->kind == Kind::Sum);
      return e->kids[0]->kids[1];
    case Rule::Nu1:
      expect(e->kind == Kind::Neg && e->kids[0]->kind == Kind::Neg);
      return e->kids[0]->kids[0];
    case Rule::Nu2: {
      expect(e->kind == Kind::Neg && e->kids[0]->kind == Kind::Prod);
      const auto& p = e->kids[0];
      return sum(neg(p->kids[0]), neg(p->kids[1]));
    }
    case Rule::Nu3: {
      expect(e->kind == Kind::Neg && e->kids[0]->kind == Kind::Sum);
      const auto& s = e->kids[0];
      return prod(neg(s->kids[0]), neg(s->kids[1]));
    }
    case Rule::Nu4: {
      expect(e->kind == Kind::Neg && e->kids[0]->kind == Kind::Abs);
      const auto& a = e->kids[0];
      return exi(a->name, a->kids[0], neg(a->kids[1]));
    }
    case Rule::Nu5: {
      expect(e->kind == Kind::Neg && e->kids[0]->kind == Kind::Exi);
      const auto& a = e->kids[0];
      return abs(a->name, a->kids[0], neg(a->kids[1]));
    }
    case Rule::Nu6:
      expect(e->kind == Kind::Neg && e->kids[0]->kind == Kind::Tau);
      return tau();
    case Rule::Nu7:
      expect(e->kind == Kind::Neg && e->kids[0]->kind == Kind::Def);
      return e->kids[0];
    case Rule::Nu8:
      expect(e->kind == Kind::Neg && e->kids[0]->kind == Kind::InjL);
      return e->kids[0];
    case Rule::Nu9:
      expect(e->kind == Kind::Neg && e->kids[0]->kind == Kind::InjR);
      return e->kids[0];
    case Rule::Nu10:
      expect(e->kind == Kind::Neg && e->kids[0]->kind == Kind::Case);
      return e->kids[0];
  }
  bad();
  return nullptr;  // unreachable
}

void collect(const ExprPtr& e, Path& path, std::vector<Redex>& out) {
  if (auto r = root_redex(e)) out.push_back({path, *r});
  for (std::size_t i = 0; i < e->kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect(e->kids[i], path, out);
    path.pop_back();
  }
}

std::optional<Redex> find_lo(const ExprPtr& e) {
  if (auto r = root_redex(e)) return Redex{{}, *r};
  for (std::size_t i = 0; i < e->kids.size(); ++i) {
    if (auto r = find_lo(e->kids[i])) {
      r->path.insert(r->path.begin(), static_cast<int>(i));
      return r;
    }
  }
  return std::nullopt;
}

std::optional<Redex> find_ri(const ExprPtr& e) {
  for (std::size_t i = e->kids.size(); i-- > 0;) {
    if (auto r = find_ri(e->kids[i])) {
      r->path.insert(r->path.begin(), static_cast<int>(i));
      return r;
    }
  }
  if (auto r = root_redex(e)) return Redex{{}, *r};
  return std::nullopt;
}

}  // namespace

std::vector<Redex> redexes(const ExprPtr& e) {
  std::vector<Redex> out;
  Path path;
  collect(e, path, out);
  return out;
}

ExprPtr step_at(const ExprPtr& e, const Path& path, Rule rule) {
  std::function<ExprPtr(const ExprPtr&, std::size_t)> go = [&](const ExprPtr& n, std::size_t i) -> ExprPtr {
    if (i == path.size()) return contract(n, rule);
    int c = path[i];
    if (c < 0 || static_cast<std::size_t>(c) >= n->kids.size())
      throw std::invalid_argument("bad redex path");
    auto kids = n->kids;
    kids[c] = go(n->kids[c], i + 1);
    return with_kids(n, std::move(kids));
  };
  return go(e, 0);
}

ExprPtr normalize(const ExprPtr& e, long fuel, Strategy strategy, long* steps_out,
                  std::vector<TraceStep>* trace) {
  ExprPtr cur = e;
  long steps = 0;
  for (;;) {
    auto r = strategy == Strategy::LeftmostOutermost ? find_lo(cur) : find_ri(cur);
    if (!r) break;
    if (steps >= fuel) throw FuelExhausted("normalize: fuel exhausted after " + std::to_string(steps) + " steps");
    cur = step_at(cur, r->path, r->rule);
    ++steps;
    if (trace) trace->push_back({r->rule, r->path, cur});
  }
  if (steps_out) *steps_out = steps;
  return cur;
}

bool converts(const ExprPtr& a, const ExprPtr& b, long fuel) {
  if (alpha_eq(a, b)) return true;
  return alpha_eq(normalize(a, fuel), normalize(b, fuel));
}

namespace {

bool in_n(const ExprPtr& e);

// Neutral expressions: a variable under a spine of eliminations.
bool in_d(const ExprPtr& e) {
  switch (e->kind) {
    case Kind::FVar:
    case Kind::BVar:
      return true;
    case Kind::App: {
      const auto& f = e->kids[0];
      if (f->kind == Kind::Case)
        return in_n(f->kids[0]) && in_n(f->kids[1]) && in_d(e->kids[1]);
      return in_d(f) && in_n(e->kids[1]);
    }
    case Kind::Proj1:
    case Kind::Proj2:
      return in_d(e->kids[0]);
    case Kind::Neg:
      return e->kids[0]->kind != Kind::Neg && in_d(e->kids[0]);
    default:
      return false;
  }
}

bool in_n(const ExprPtr& e) {
  switch (e->kind) {
    case Kind::Tau:
      return true;
    case Kind::Abs:
    case Kind::Exi:
    case Kind::Prod:
    case Kind::Sum:
    case Kind::InjL:
    case Kind::InjR:
    case Kind::Case:
      return in_n(e->kids[0]) && in_n(e->kids[1]);
    case Kind::Def:
      return in_n(e->kids[0]) && in_n(e->kids[1]) && in_n(e->kids[2]);
    default:
      return in_d(e);
  }
}

}  // namespace

NormalClass classify(const ExprPtr& e) {
  if (in_d(e)) return NormalClass::InD;
  if (in_n(e)) return NormalClass::InN;
  return NormalClass::Reducible;
}

const char* normal_class_name(NormalClass c) {
  switch (c) {
    case NormalClass::InN: return "canonical";
    case NormalClass::InD: return "neutral";
    case NormalClass::Reducible: return "reducible";
  }
  return "?";
}

}  // namespace dcheck
