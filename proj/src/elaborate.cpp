#include "dcheck/elaborate.hpp"

#include <algorithm>
#include <cstdint>

#include "dcheck/print.hpp"
#include "dcheck/reduce.hpp"
#include "dcheck/subst_machine.hpp"

namespace dcheck {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  static const char* d = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = d[v & 0xf];
    v >>= 4;
  }
  return out.substr(4);  // 12 hex digits are plenty
}

}  // namespace

ExprPtr Elaborator::lower(const SPtr& e, bool allow_free) {
  std::vector<Name> scope;
  return lower_(e, scope, nullptr, allow_free);
}

ExprPtr Elaborator::lower_(const SPtr& e, std::vector<Name>& scope,
                           const std::map<Name, ExprPtr>* param_args, bool allow_free) {
  auto rec = [&](const SPtr& k) { return lower_(k, scope, param_args, allow_free); };
  switch (e->k) {
    case SNode::K::Tau:
      return tau();
    case SNode::K::Ident: {
      for (std::size_t i = scope.size(); i-- > 0;)
        if (scope[i] == e->name) return bvar(static_cast<int>(scope.size() - 1 - i));
      if (param_args) {
        auto it = param_args->find(e->name);
        if (it != param_args->end()) return it->second;
      }
      auto di = defs_.find(e->name);
      if (di != defs_.end()) return di->second;
      if (ctx_.lookup(e->name)) return fvar(e->name);
      if (allow_free) return fvar(e->name);
      throw ElabError("unknown name `" + e->name + "`", e->span);
    }
    case SNode::K::Abs:
    case SNode::K::Exi: {
      ExprPtr dom = rec(e->kids[0]);
      scope.push_back(e->name);
      ExprPtr body = lower_(e->kids[1], scope, param_args, allow_free);
      scope.pop_back();
      return e->k == SNode::K::Abs ? abs(e->name, dom, body) : exi(e->name, dom, body);
    }
    case SNode::K::PDef: {
      ExprPtr w = rec(e->kids[0]);
      ExprPtr pr = rec(e->kids[1]);
      scope.push_back(e->name);
      ExprPtr tmpl = lower_(e->kids[2], scope, param_args, allow_free);
      scope.pop_back();
      return pdef(e->name, w, pr, tmpl);
    }
    case SNode::K::App:
      return app(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::Proj1:
      return proj1(rec(e->kids[0]));
    case SNode::K::Proj2:
      return proj2(rec(e->kids[0]));
    case SNode::K::Prod:
      return prod(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::Sum:
      return sum(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::InjL:
      return injl(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::InjR:
      return injr(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::Case:
      return kase(rec(e->kids[0]), rec(e->kids[1]));
    case SNode::K::Neg:
      return neg(rec(e->kids[0]));
    case SNode::K::SchemeInst: {
      std::vector<ExprPtr> args;
      for (const auto& a : e->kids) {
        ExprPtr la = lower_(a, scope, param_args, allow_free);
        if (!locally_closed(la))
          throw ElabError("scheme arguments must not mention bound variables", e->span);
        args.push_back(std::move(la));
      }
      return fvar(instantiate_scheme(e, std::move(args)));
    }
  }
  throw ElabError("unreachable", e->span);
}

Name Elaborator::instantiate_scheme(const SPtr& e, std::vector<ExprPtr> args) {
  auto it = schemes_.find(e->name);
  if (it == schemes_.end()) throw ElabError("unknown scheme `" + e->name + "`", e->span);
  const auto& [params, tmpl] = it->second;
  if (params.size() != args.size())
    throw ElabError("scheme `" + e->name + "` expects " + std::to_string(params.size()) +
                        " argument(s), got " + std::to_string(args.size()),
                    e->span);
  // Hash the normal forms so convertible arguments share an instance.
  std::string key = e->name;
  for (const auto& a : args) {
    try {
      key += "\x1f" + canonical_print(normalize(a, fuel_));
    } catch (const FuelExhausted&) {
      throw ElabError("fuel exhausted while normalizing a scheme argument", e->span);
    }
  }
  Name var = e->name + "@" + hex16(fnv1a(key));
  if (!ctx_.lookup(var)) {
    std::map<Name, ExprPtr> param_map;
    for (std::size_t i = 0; i < params.size(); ++i) param_map[params[i]] = args[i];
    std::vector<Name> scope;
    ExprPtr type = lower_(tmpl, scope, &param_map, false);
    Checker ch(fuel_);
    auto r = ch.infer(ctx_, type);
    if (!r.ok())
      throw ElabError("scheme instance `" + var + "` has an untypable type: " + describe(r.error()),
                      e->span);
    ctx_.extend(var, type);
  }
  return var;
}

std::vector<Verdict> Elaborator::run(const Theory& th, const RunOptions& opts, RunStats* stats) {
  std::vector<Verdict> out;
  for (std::size_t i = 0; i < th.directives.size(); ++i) {
    const Directive& d = th.directives[i];
    Verdict v;
    v.file = th.file;
    v.index = static_cast<int>(i);
    v.kind = directive_kind_name(d.k);
    v.span = d.span;
    auto taken = [&](const Name& n) {
      return ctx_.lookup(n).has_value() || defs_.count(n) || schemes_.count(n);
    };
    try {
      switch (d.k) {
        case Directive::K::Axiom: {
          if (taken(d.name)) throw ElabError("name `" + d.name + "` is already in use", d.span);
          ExprPtr type = lower(d.e1);
          Checker ch(fuel_);
          auto r = ch.infer(ctx_, type);
          if (!r.ok()) {
            v.detail = describe(r.error());
            break;
          }
          ctx_.extend(d.name, type);
          v.ok = true;
          break;
        }
        case Directive::K::Def: {
          if (taken(d.name)) throw ElabError("name `" + d.name + "` is already in use", d.span);
          ExprPtr body = lower(d.e1);
          Checker ch(fuel_);
          auto r = ch.infer(ctx_, body);
          if (!r.ok()) {
            v.detail = describe(r.error());
            break;
          }
          defs_[d.name] = body;
          v.ok = true;
          break;
        }
        case Directive::K::Scheme: {
          if (taken(d.name)) throw ElabError("name `" + d.name + "` is already in use", d.span);
          schemes_[d.name] = {d.params, d.e1};
          v.ok = true;
          break;
        }
        case Directive::K::Check: {
          ExprPtr a = lower(d.e1);
          ExprPtr b = lower(d.e2);
          Checker ch(fuel_, opts.explain);
          auto r = ch.check(ctx_, a, b);
          if (!r.ok()) {
            v.detail = describe(r.error());
            break;
          }
          if (opts.explain) {
            std::string why;
            if (!replay_certificate(ch.certificate(), fuel_, &why)) {
              v.detail = "certificate replay failed: " + why;
              break;
            }
          }
          v.ok = true;
          break;
        }
        case Directive::K::Normalize: {
          ExprPtr a = lower(d.e1);
          long steps = 0;
          ExprPtr nf = normalize(a, fuel_, Strategy::LeftmostOutermost, &steps);
          if (stats) {
            stats->steps += steps;
            stats->max_steps = std::max(stats->max_steps, steps);
          }
          if (opts.oracle) {
            ExprPtr mnf = es::es_normalize(a, fuel_);
            if (!alpha_eq(nf, mnf)) {
              v.detail = "oracle mismatch: machine produced `" + print(mnf) + "`";
              break;
            }
          }
          v.ok = true;
          v.detail = print(nf);
          break;
        }
        case Directive::K::AssertConverts: {
          ExprPtr a = lower(d.e1);
          ExprPtr b = lower(d.e2);
          ExprPtr na = normalize(a, fuel_);
          ExprPtr nb = normalize(b, fuel_);
          if (opts.oracle) {
            if (!alpha_eq(na, es::es_normalize(a, fuel_)) || !alpha_eq(nb, es::es_normalize(b, fuel_))) {
              v.detail = "oracle mismatch against the substitution machine";
              break;
            }
          }
          if (!alpha_eq(na, nb)) {
            v.detail = "`" + print(na) + "` and `" + print(nb) + "` differ";
            break;
          }
          v.ok = true;
          break;
        }
        case Directive::K::AssertInvalid: {
          ExprPtr a = lower(d.e1);
          Checker ch(fuel_);
          if (ch.valid(ctx_, a)) {
            auto r = ch.infer(ctx_, a);
            v.detail = "expression is valid, with type `" + print(r.value()) + "`";
            break;
          }
          v.ok = true;
          v.detail = ch.last_error() ? err_kind_name(ch.last_error()->kind) : "";
          break;
        }
      }
    } catch (const ElabError& ex) {
      v.detail = std::string("ElabError: ") + ex.what();
    } catch (const FuelExhausted& ex) {
      v.detail = std::string("FuelExhausted: ") + ex.what();
    }
    out.push_back(v);
    if (!v.ok && opts.stop_on_error) break;
  }
  return out;
}

}  // namespace dcheck
