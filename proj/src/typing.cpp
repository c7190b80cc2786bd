#include "dcheck/typing.hpp"

#include <sstream>

#include "dcheck/print.hpp"

namespace dcheck {

const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::UnboundVariable: return "UnboundVariable";
    case ErrKind::NotAFunction: return "NotAFunction";
    case ErrKind::ArgumentMismatch: return "ArgumentMismatch";
    case ErrKind::NotAPairLike: return "NotAPairLike";
    case ErrKind::BodyMismatch: return "BodyMismatch";
    case ErrKind::CaseBranchMismatch: return "CaseBranchMismatch";
    case ErrKind::CaseDependentResult: return "CaseDependentResult";
    case ErrKind::IllFormedContext: return "IllFormedContext";
    case ErrKind::FuelExhausted: return "FuelExhausted";
  }
  return "?";
}

namespace {

struct PathGuard {
  Path& path;
  explicit PathGuard(Path& p, int i) : path(p) { path.push_back(i); }
  ~PathGuard() { path.pop_back(); }
};

CertPtr mk_cert(const char* rule, const Context& ctx, ExprPtr subject, ExprPtr type,
                std::vector<CertPtr> premises) {
  auto c = std::make_shared<Cert>();
  c->rule = rule;
  c->ctx = ctx;
  c->subject = std::move(subject);
  c->type = std::move(type);
  c->premises = std::move(premises);
  return c;
}

}  // namespace

Result<ExprPtr> Checker::infer(const Context& ctx, const ExprPtr& a) {
  Path path;
  CertPtr cert;
  auto r = infer_(ctx, a, path, record_ ? &cert : nullptr);
  if (r.ok() && record_) cert_ = cert;
  return r;
}

Result<ExprPtr> Checker::infer_(const Context& ctx, const ExprPtr& a, Path& path, CertPtr* cert) {
  auto fail = [&](ErrKind kind, ExprPtr expected, ExprPtr actual, std::string detail) {
    return Result<ExprPtr>(TypeError{kind, path, std::move(expected), std::move(actual), std::move(detail)});
  };
  auto normalize_or = [&](const ExprPtr& e) -> std::optional<ExprPtr> {
    try {
      return normalize(e, fuel_);
    } catch (const FuelExhausted&) {
      return std::nullopt;
    }
  };
  auto converts_or = [&](const ExprPtr& x, const ExprPtr& y) -> std::optional<bool> {
    try {
      return converts(x, y, fuel_);
    } catch (const FuelExhausted&) {
      return std::nullopt;
    }
  };

  switch (a->kind) {
    case Kind::Tau:
      if (cert) *cert = mk_cert("ax", ctx, a, tau(), {});
      return tau();

    case Kind::FVar: {
      auto t = ctx.lookup(a->name);
      if (!t) return fail(ErrKind::UnboundVariable, nullptr, a, "variable `" + a->name + "` is not declared");
      if (cert) *cert = mk_cert("var", ctx, a, *t, {});
      return *t;
    }

    case Kind::BVar:
      return fail(ErrKind::UnboundVariable, nullptr, a, "dangling bound variable");

    case Kind::Abs:
    case Kind::Exi: {
      CertPtr cd;
      {
        PathGuard g(path, 0);
        auto rd = infer_(ctx, a->kids[0], path, cert ? &cd : nullptr);
        if (!rd.ok()) return rd;
      }
      std::set<Name> avoid = ctx.names();
      for (const auto& n : free_vars(a->kids[1])) avoid.insert(n);
      Name x = fresh_name(a->name, avoid);
      Context inner = ctx;
      inner.extend(x, a->kids[0]);
      CertPtr cb;
      ExprPtr tb;
      {
        PathGuard g(path, 1);
        auto rb = infer_(inner, open_with(a->kids[1], x), path, cert ? &cb : nullptr);
        if (!rb.ok()) return rb;
        tb = rb.value();
      }
      // Both abstractions inhabit a universal abstraction.
      ExprPtr ty = abs(a->name, a->kids[0], close_over(tb, x));
      if (cert) *cert = mk_cert(a->kind == Kind::Abs ? "abs_U" : "abs_E", ctx, a, ty, {cd, cb});
      return ty;
    }

    case Kind::App: {
      CertPtr cf;
      ExprPtr tf;
      {
        PathGuard g(path, 0);
        auto rf = infer_(ctx, a->kids[0], path, cert ? &cf : nullptr);
        if (!rf.ok()) return rf;
        tf = rf.value();
      }
      auto nf = normalize_or(tf);
      if (!nf) return fail(ErrKind::FuelExhausted, nullptr, tf, "while normalizing the operator type");
      if ((*nf)->kind != Kind::Abs)
        return fail(ErrKind::NotAFunction, nullptr, *nf,
                    "operator has type `" + print(*nf) + "`, which is not a universal abstraction");
      CertPtr cu;
      ExprPtr tu;
      {
        PathGuard g(path, 1);
        auto ru = infer_(ctx, a->kids[1], path, cert ? &cu : nullptr);
        if (!ru.ok()) return ru;
        tu = ru.value();
      }
      auto okc = converts_or(tu, (*nf)->kids[0]);
      if (!okc) return fail(ErrKind::FuelExhausted, (*nf)->kids[0], tu, "while comparing argument type");
      if (!*okc)
        return fail(ErrKind::ArgumentMismatch, (*nf)->kids[0], tu,
                    "argument type does not match the operator domain");
      ExprPtr ty = instantiate((*nf)->kids[1], a->kids[1]);
      if (cert) *cert = mk_cert("appl", ctx, a, ty, {cf, cu});
      return ty;
    }

    case Kind::Def: {
      // <x := w, p : d>  requires  w : b,  d typable under x:b,  p : d[x:=w].
      CertPtr cw;
      ExprPtr b;
      {
        PathGuard g(path, 0);
        auto rw = infer_(ctx, a->kids[0], path, cert ? &cw : nullptr);
        if (!rw.ok()) return rw;
        b = rw.value();
      }
      std::set<Name> avoid = ctx.names();
      for (const auto& n : free_vars(a->kids[2])) avoid.insert(n);
      Name x = fresh_name(a->name, avoid);
      Context inner = ctx;
      inner.extend(x, b);
      CertPtr cd;
      {
        PathGuard g(path, 2);
        auto rd = infer_(inner, open_with(a->kids[2], x), path, cert ? &cd : nullptr);
        if (!rd.ok()) return rd;
      }
      CertPtr cp;
      ExprPtr tp;
      {
        PathGuard g(path, 1);
        auto rp = infer_(ctx, a->kids[1], path, cert ? &cp : nullptr);
        if (!rp.ok()) return rp;
        tp = rp.value();
      }
      ExprPtr want = instantiate(a->kids[2], a->kids[0]);
      auto okc = converts_or(tp, want);
      if (!okc) return fail(ErrKind::FuelExhausted, want, tp, "while comparing the protected body type");
      if (!*okc)
        return fail(ErrKind::BodyMismatch, want, tp,
                    "protected body does not have the instantiated template type");
      ExprPtr ty = exi(a->name, b, a->kids[2]);
      if (cert) *cert = mk_cert("def", ctx, a, ty, {cw, cd, cp});
      return ty;
    }

    case Kind::Proj1:
    case Kind::Proj2: {
      CertPtr cs;
      ExprPtr ts;
      {
        PathGuard g(path, 0);
        auto rs = infer_(ctx, a->kids[0], path, cert ? &cs : nullptr);
        if (!rs.ok()) return rs;
        ts = rs.value();
      }
      auto nf = normalize_or(ts);
      if (!nf) return fail(ErrKind::FuelExhausted, nullptr, ts, "while normalizing the projection subject type");
      bool left = a->kind == Kind::Proj1;
      if ((*nf)->kind == Kind::Exi) {
        ExprPtr ty = left ? (*nf)->kids[0] : instantiate((*nf)->kids[1], proj1(a->kids[0]));
        if (cert) *cert = mk_cert(left ? "ch_I" : "ch_B", ctx, a, ty, {cs});
        return ty;
      }
      if ((*nf)->kind == Kind::Prod) {
        ExprPtr ty = left ? (*nf)->kids[0] : (*nf)->kids[1];
        if (cert) *cert = mk_cert(left ? "pr_L" : "pr_R", ctx, a, ty, {cs});
        return ty;
      }
      return fail(ErrKind::NotAPairLike, nullptr, *nf,
                  "projection subject has type `" + print(*nf) + "`, which is neither existential nor a product");
    }

    case Kind::Prod:
    case Kind::Sum: {
      CertPtr ca, cb;
      ExprPtr ta, tb;
      {
        PathGuard g(path, 0);
        auto r = infer_(ctx, a->kids[0], path, cert ? &ca : nullptr);
        if (!r.ok()) return r;
        ta = r.value();
      }
      {
        PathGuard g(path, 1);
        auto r = infer_(ctx, a->kids[1], path, cert ? &cb : nullptr);
        if (!r.ok()) return r;
        tb = r.value();
      }
      // Sums also inhabit products.
      ExprPtr ty = prod(ta, tb);
      if (cert) *cert = mk_cert(a->kind == Kind::Prod ? "prd" : "sum", ctx, a, ty, {ca, cb});
      return ty;
    }

    case Kind::InjL:
    case Kind::InjR: {
      bool left = a->kind == Kind::InjL;
      int vi = left ? 0 : 1;
      int oi = left ? 1 : 0;
      CertPtr cv, co;
      ExprPtr tv;
      {
        PathGuard g(path, vi);
        auto r = infer_(ctx, a->kids[vi], path, cert ? &cv : nullptr);
        if (!r.ok()) return r;
        tv = r.value();
      }
      {
        PathGuard g(path, oi);
        auto r = infer_(ctx, a->kids[oi], path, cert ? &co : nullptr);
        if (!r.ok()) return r;
      }
      ExprPtr ty = left ? sum(tv, a->kids[1]) : sum(a->kids[0], tv);
      if (cert) *cert = mk_cert(left ? "inj_L" : "inj_R", ctx, a, ty, {cv, co});
      return ty;
    }

    case Kind::Case: {
      CertPtr cl, cr;
      ExprPtr tl, tr;
      {
        PathGuard g(path, 0);
        auto r = infer_(ctx, a->kids[0], path, cert ? &cl : nullptr);
        if (!r.ok()) return r;
        tl = r.value();
      }
      {
        PathGuard g(path, 1);
        auto r = infer_(ctx, a->kids[1], path, cert ? &cr : nullptr);
        if (!r.ok()) return r;
        tr = r.value();
      }
      auto nl = normalize_or(tl);
      auto nr = normalize_or(tr);
      if (!nl || !nr) return fail(ErrKind::FuelExhausted, nullptr, nullptr, "while normalizing branch types");
      if ((*nl)->kind != Kind::Abs || (*nr)->kind != Kind::Abs)
        return fail(ErrKind::CaseBranchMismatch, *nl, *nr, "case branches must be universal abstractions");
      if (occurs_bvar((*nl)->kids[1], 0) || occurs_bvar((*nr)->kids[1], 0))
        return fail(ErrKind::CaseDependentResult, *nl, *nr,
                    "branch result types must not depend on the bound variable");
      ExprPtr d1 = instantiate((*nl)->kids[1], tau());  // binder unused: drops it
      ExprPtr d2 = instantiate((*nr)->kids[1], tau());
      auto okc = converts_or(d1, d2);
      if (!okc) return fail(ErrKind::FuelExhausted, d1, d2, "while comparing branch result types");
      if (!*okc)
        return fail(ErrKind::CaseBranchMismatch, d1, d2, "case branches have different result types");
      CertPtr cdv;
      {
        auto r = infer_(ctx, d1, path, cert ? &cdv : nullptr);
        if (!r.ok()) return r;
      }
      ExprPtr ty = abs("z", sum((*nl)->kids[0], (*nr)->kids[0]), d1);
      if (cert) *cert = mk_cert("case", ctx, a, ty, {cl, cr, cdv});
      return ty;
    }

    case Kind::Neg: {
      CertPtr cn;
      PathGuard g(path, 0);
      auto r = infer_(ctx, a->kids[0], path, cert ? &cn : nullptr);
      if (!r.ok()) return r;
      if (cert) *cert = mk_cert("neg", ctx, a, r.value(), {cn});
      return r;
    }

    case Kind::Subst:
      return fail(ErrKind::UnboundVariable, nullptr, a, "substitution nodes are not typable");
  }
  return fail(ErrKind::UnboundVariable, nullptr, a, "unreachable");
}

Result<std::monostate> Checker::check(const Context& ctx, const ExprPtr& a, const ExprPtr& b) {
  Path path;
  CertPtr ca, cb;
  auto ra = infer_(ctx, a, path, record_ ? &ca : nullptr);
  if (!ra.ok()) return ra.error();
  // The conversion target must itself be typable.
  auto rb = infer_(ctx, b, path, record_ ? &cb : nullptr);
  if (!rb.ok()) return rb.error();
  bool conv;
  try {
    conv = converts(ra.value(), b, fuel_);
  } catch (const FuelExhausted&) {
    return TypeError{ErrKind::FuelExhausted, {}, b, ra.value(), "while comparing against the stated type"};
  }
  if (!conv)
    return TypeError{ErrKind::BodyMismatch, {}, b, ra.value(),
                     "inferred type `" + print(ra.value()) + "` does not convert to `" + print(b) + "`"};
  if (record_) cert_ = mk_cert("conv", ctx, a, b, {ca, cb});
  return std::monostate{};
}

bool Checker::valid(const Context& ctx, const ExprPtr& a) {
  auto r = infer(ctx, a);
  if (r.ok()) {
    last_error_.reset();
    return true;
  }
  last_error_ = r.error();
  return false;
}

Result<std::monostate> Checker::check_context(const Context& ctx) {
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    Context pre = ctx.prefix(i);
    auto r = infer(pre, ctx.entry(i).second);
    if (!r.ok())
      return TypeError{ErrKind::IllFormedContext, {}, nullptr, ctx.entry(i).second,
                       "declared type of `" + ctx.entry(i).first + "` is not typable: " + describe(r.error())};
  }
  return std::monostate{};
}

namespace {

bool ctx_extends(const Context& inner, const Context& outer, Name* x, ExprPtr* ty) {
  if (inner.size() != outer.size() + 1) return false;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    if (inner.entry(i).first != outer.entry(i).first) return false;
    if (!alpha_eq(inner.entry(i).second, outer.entry(i).second)) return false;
  }
  *x = inner.entry(outer.size()).first;
  *ty = inner.entry(outer.size()).second;
  return true;
}

bool replay1(const Cert& c, long fuel, std::string* why) {
  auto bad = [&](const std::string& msg) {
    if (why) *why = c.rule + ": " + msg;
    return false;
  };
  const auto& P = c.premises;
  const ExprPtr& s = c.subject;
  try {
    if (c.rule == "ax") return s->kind == Kind::Tau && c.type->kind == Kind::Tau ? true : bad("shape");
    if (c.rule == "var") {
      if (s->kind != Kind::FVar) return bad("subject");
      auto t = c.ctx.lookup(s->name);
      return t && alpha_eq(*t, c.type) ? true : bad("lookup");
    }
    if (c.rule == "abs_U" || c.rule == "abs_E") {
      bool uni = c.rule == "abs_U";
      if (s->kind != (uni ? Kind::Abs : Kind::Exi) || P.size() != 2) return bad("shape");
      if (!(P[0]->ctx == c.ctx) || !alpha_eq(P[0]->subject, s->kids[0])) return bad("domain premise");
      Name x;
      ExprPtr xt;
      if (!ctx_extends(P[1]->ctx, c.ctx, &x, &xt) || !alpha_eq(xt, s->kids[0])) return bad("body context");
      if (!alpha_eq(P[1]->subject, open_with(s->kids[1], x))) return bad("body premise");
      return alpha_eq(c.type, abs("", s->kids[0], close_over(P[1]->type, x))) ? true : bad("conclusion");
    }
    if (c.rule == "appl") {
      if (s->kind != Kind::App || P.size() != 2) return bad("shape");
      if (!alpha_eq(P[0]->subject, s->kids[0]) || !alpha_eq(P[1]->subject, s->kids[1])) return bad("premises");
      ExprPtr nf = normalize(P[0]->type, fuel);
      if (nf->kind != Kind::Abs) return bad("operator type");
      if (!converts(P[1]->type, nf->kids[0], fuel)) return bad("argument domain");
      return alpha_eq(c.type, instantiate(nf->kids[1], s->kids[1])) ? true : bad("conclusion");
    }
    if (c.rule == "def") {
      if (s->kind != Kind::Def || P.size() != 3) return bad("shape");
      if (!alpha_eq(P[0]->subject, s->kids[0])) return bad("witness premise");
      Name x;
      ExprPtr xt;
      if (!ctx_extends(P[1]->ctx, c.ctx, &x, &xt) || !alpha_eq(xt, P[0]->type)) return bad("template context");
      if (!alpha_eq(P[1]->subject, open_with(s->kids[2], x))) return bad("template premise");
      if (!alpha_eq(P[2]->subject, s->kids[1])) return bad("body premise");
      if (!converts(P[2]->type, instantiate(s->kids[2], s->kids[0]), fuel)) return bad("body type");
      return alpha_eq(c.type, exi("", P[0]->type, s->kids[2])) ? true : bad("conclusion");
    }
    if (c.rule == "ch_I" || c.rule == "ch_B" || c.rule == "pr_L" || c.rule == "pr_R") {
      bool left = c.rule == "ch_I" || c.rule == "pr_L";
      if (s->kind != (left ? Kind::Proj1 : Kind::Proj2) || P.size() != 1) return bad("shape");
      if (!alpha_eq(P[0]->subject, s->kids[0])) return bad("premise");
      ExprPtr nf = normalize(P[0]->type, fuel);
      if (c.rule[0] == 'c') {  // existential flavor
        if (nf->kind != Kind::Exi) return bad("subject type");
        ExprPtr want = left ? nf->kids[0] : instantiate(nf->kids[1], proj1(s->kids[0]));
        return alpha_eq(c.type, want) ? true : bad("conclusion");
      }
      if (nf->kind != Kind::Prod) return bad("subject type");
      return alpha_eq(c.type, left ? nf->kids[0] : nf->kids[1]) ? true : bad("conclusion");
    }
    if (c.rule == "prd" || c.rule == "sum") {
      if (P.size() != 2) return bad("shape");
      if (!alpha_eq(P[0]->subject, s->kids[0]) || !alpha_eq(P[1]->subject, s->kids[1])) return bad("premises");
      return alpha_eq(c.type, prod(P[0]->type, P[1]->type)) ? true : bad("conclusion");
    }
    if (c.rule == "inj_L" || c.rule == "inj_R") {
      bool left = c.rule == "inj_L";
      if (s->kind != (left ? Kind::InjL : Kind::InjR) || P.size() != 2) return bad("shape");
      int vi = left ? 0 : 1;
      if (!alpha_eq(P[0]->subject, s->kids[vi])) return bad("value premise");
      ExprPtr want = left ? sum(P[0]->type, s->kids[1]) : sum(s->kids[0], P[0]->type);
      return alpha_eq(c.type, want) ? true : bad("conclusion");
    }
    if (c.rule == "case") {
      if (s->kind != Kind::Case || P.size() != 3) return bad("shape");
      ExprPtr nl = normalize(P[0]->type, fuel);
      ExprPtr nr = normalize(P[1]->type, fuel);
      if (nl->kind != Kind::Abs || nr->kind != Kind::Abs) return bad("branch types");
      if (occurs_bvar(nl->kids[1], 0) || occurs_bvar(nr->kids[1], 0)) return bad("dependent result");
      ExprPtr d1 = instantiate(nl->kids[1], tau());
      ExprPtr d2 = instantiate(nr->kids[1], tau());
      if (!converts(d1, d2, fuel)) return bad("result mismatch");
      if (!alpha_eq(P[2]->subject, d1)) return bad("result premise");
      return alpha_eq(c.type, abs("", sum(nl->kids[0], nr->kids[0]), d1)) ? true : bad("conclusion");
    }
    if (c.rule == "neg") {
      if (s->kind != Kind::Neg || P.size() != 1) return bad("shape");
      if (!alpha_eq(P[0]->subject, s->kids[0])) return bad("premise");
      return alpha_eq(c.type, P[0]->type) ? true : bad("conclusion");
    }
    if (c.rule == "conv") {
      if (P.size() != 2) return bad("shape");
      if (!alpha_eq(P[0]->subject, s)) return bad("subject premise");
      if (!alpha_eq(P[1]->subject, c.type)) return bad("target premise");
      return converts(P[0]->type, c.type, fuel) ? true : bad("conversion");
    }
  } catch (const FuelExhausted&) {
    return bad("fuel exhausted");
  }
  return bad("unknown rule");
}

}  // namespace

bool replay_certificate(const CertPtr& cert, long fuel, std::string* why) {
  if (!cert) {
    if (why) *why = "null certificate";
    return false;
  }
  for (const auto& p : cert->premises)
    if (!replay_certificate(p, fuel, why)) return false;
  return replay1(*cert, fuel, why);
}

std::string describe(const TypeError& err) {
  std::ostringstream out;
  out << err_kind_name(err.kind);
  if (!err.path.empty()) {
    out << " at ";
    for (std::size_t i = 0; i < err.path.size(); ++i) out << (i ? "." : "") << err.path[i];
  }
  out << ": " << err.detail;
  if (err.expected) out << " (expected `" << print(err.expected) << "`";
  if (err.expected && err.actual) out << ", got `" << print(err.actual) << "`";
  if (err.expected) out << ")";
  return out.str();
}

}  // namespace dcheck
