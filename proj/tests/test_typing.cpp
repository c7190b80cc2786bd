#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "dcheck/expr.hpp"
#include "dcheck/print.hpp"
#include "dcheck/reduce.hpp"
#include "dcheck/typing.hpp"

using namespace dcheck;

namespace {

Context props_ctx() {
  // a:tau, b:tau, P:[y:a]b, x:a, z:(P x)
  Context ctx;
  ctx.extend("a", tau());
  ctx.extend("b", tau());
  ctx.extend("P", abs("y", fvar("a"), fvar("b")));
  ctx.extend("x", fvar("a"));
  ctx.extend("z", app(fvar("P"), fvar("x")));
  return ctx;
}

ErrKind infer_err(const Context& ctx, const ExprPtr& e, long fuel = kDefaultFuel) {
  Checker ck(fuel);
  auto r = ck.infer(ctx, e);
  REQUIRE(!r.ok());
  return r.error().kind;
}

}  // namespace

TEST_CASE("base judgments") {
  Checker ck;
  Context empty;
  auto r = ck.infer(empty, tau());
  REQUIRE(r.ok());
  CHECK(alpha_eq(r.value(), tau()));  // the constant is its own type

  // I = [x:tau]x has type C = [x:tau]tau, and C : C.
  ExprPtr I = abs("x", tau(), bvar(0));
  ExprPtr C = abs("x", tau(), tau());
  auto ri = ck.infer(empty, I);
  REQUIRE(ri.ok());
  CHECK(alpha_eq(ri.value(), C));
  auto rc = ck.infer(empty, C);
  REQUIRE(rc.ok());
  CHECK(alpha_eq(rc.value(), C));
}

TEST_CASE("variables read their declared type") {
  Context ctx = props_ctx();
  Checker ck;
  auto r = ck.infer(ctx, fvar("z"));
  REQUIRE(r.ok());
  CHECK(alpha_eq(r.value(), app(fvar("P"), fvar("x"))));
  CHECK(infer_err(ctx, fvar("nope")) == ErrKind::UnboundVariable);
}

TEST_CASE("both abstraction forms type to the universal form") {
  Context ctx = props_ctx();
  Checker ck;
  ExprPtr u = abs("y", fvar("a"), app(fvar("P"), bvar(0)));
  ExprPtr e = exi("y", fvar("a"), app(fvar("P"), bvar(0)));
  ExprPtr want = abs("y", fvar("a"), fvar("b"));
  auto ru = ck.infer(ctx, u);
  REQUIRE(ru.ok());
  CHECK(converts(ru.value(), want));
  auto re = ck.infer(ctx, e);
  REQUIRE(re.ok());
  CHECK(converts(re.value(), want));
}

TEST_CASE("application") {
  Context ctx = props_ctx();
  Checker ck;
  auto r = ck.infer(ctx, app(fvar("P"), fvar("x")));
  REQUIRE(r.ok());
  CHECK(alpha_eq(normalize(r.value()), fvar("b")));

  // Domain matching is up to conversion of the argument's type.
  Context c2;
  c2.extend("b", tau());
  c2.extend("f", abs("x", app(abs("y", tau(), tau()), fvar("b")), tau()));
  c2.extend("c", tau());
  CHECK(Checker().valid(c2, app(fvar("f"), fvar("c"))));

  // Mismatched argument.
  CHECK(infer_err(ctx, app(fvar("P"), fvar("b"))) == ErrKind::ArgumentMismatch);
  // Operator whose type is existential: not a function.
  Context c3;
  c3.extend("a", tau());
  c3.extend("w", exi("x", tau(), tau()));
  c3.extend("u", tau());
  CHECK(infer_err(c3, app(fvar("w"), fvar("u"))) == ErrKind::NotAFunction);
  // Operator whose type is not an abstraction at all.
  CHECK(infer_err(ctx, app(fvar("x"), fvar("x"))) == ErrKind::NotAFunction);
}

TEST_CASE("protected definition introduction and elimination") {
  Context ctx = props_ctx();
  Checker ck;
  // <y:=x, z : (P y)>  :  [y!a](P y)
  ExprPtr pd = pdef("y", fvar("x"), fvar("z"), app(fvar("P"), bvar(0)));
  auto r = ck.infer(ctx, pd);
  REQUIRE(r.ok());
  CHECK(alpha_eq(r.value(), exi("y", fvar("a"), app(fvar("P"), bvar(0)))));

  // Eliminations on an existentially typed variable.
  Context c2 = props_ctx();
  c2.extend("w", exi("y", fvar("a"), app(fvar("P"), bvar(0))));
  auto r1 = Checker().infer(c2, proj1(fvar("w")));
  REQUIRE(r1.ok());
  CHECK(alpha_eq(r1.value(), fvar("a")));
  auto r2 = Checker().infer(c2, proj2(fvar("w")));
  REQUIRE(r2.ok());
  CHECK(alpha_eq(normalize(r2.value()), app(fvar("P"), proj1(fvar("w")))));

  // A proof that does not fit the instantiated template.
  ExprPtr bad = pdef("y", fvar("x"), fvar("x"), app(fvar("P"), bvar(0)));
  CHECK(infer_err(ctx, bad) == ErrKind::BodyMismatch);
  // Projection of something that is neither pair-like nor existential.
  CHECK(infer_err(ctx, proj1(fvar("x"))) == ErrKind::NotAPairLike);
}

TEST_CASE("products, sums, injections, case") {
  Context ctx;
  ctx.extend("a", tau());
  ctx.extend("b", tau());
  ctx.extend("u", fvar("a"));
  ctx.extend("v", fvar("b"));
  Checker ck;

  auto rp = ck.infer(ctx, prod(fvar("u"), fvar("v")));
  REQUIRE(rp.ok());
  CHECK(alpha_eq(rp.value(), prod(fvar("a"), fvar("b"))));
  auto r1 = ck.infer(ctx, proj1(prod(fvar("u"), fvar("v"))));
  REQUIRE(r1.ok());
  CHECK(alpha_eq(r1.value(), fvar("a")));

  // A sum is typed by the product of the component types.
  auto rs = ck.infer(ctx, sum(fvar("u"), fvar("v")));
  REQUIRE(rs.ok());
  CHECK(alpha_eq(rs.value(), prod(fvar("a"), fvar("b"))));

  auto ril = ck.infer(ctx, injl(fvar("u"), fvar("b")));
  REQUIRE(ril.ok());
  CHECK(alpha_eq(ril.value(), sum(fvar("a"), fvar("b"))));
  auto rir = ck.infer(ctx, injr(fvar("a"), fvar("v")));
  REQUIRE(rir.ok());
  CHECK(alpha_eq(rir.value(), sum(fvar("a"), fvar("b"))));

  // case{f,g} where f:[x:a]c, g:[y:b]c gives [z:[a+b]]c.
  Context c2;
  c2.extend("a", tau());
  c2.extend("b", tau());
  c2.extend("c", tau());
  c2.extend("f", abs("x", fvar("a"), fvar("c")));
  c2.extend("g", abs("y", fvar("b"), fvar("c")));
  auto rc = Checker().infer(c2, kase(fvar("f"), fvar("g")));
  REQUIRE(rc.ok());
  CHECK(alpha_eq(rc.value(), abs("z", sum(fvar("a"), fvar("b")), fvar("c"))));

  // Branch codomains must agree...
  Context c3 = c2;
  c3.extend("h", abs("y", fvar("b"), fvar("b")));
  CHECK(infer_err(c3, kase(fvar("f"), fvar("h"))) == ErrKind::CaseBranchMismatch);
  // ... and must not depend on the branch's own binder.
  Context c4;
  c4.extend("dep", abs("x", tau(), abs("y", bvar(0), bvar(1))));
  CHECK(infer_err(c4, kase(fvar("dep"), fvar("dep"))) == ErrKind::CaseDependentResult);
}

TEST_CASE("negation is transparent to typing") {
  Context ctx = props_ctx();
  Checker ck;
  auto ra = ck.infer(ctx, fvar("x"));
  auto rn = ck.infer(ctx, neg(fvar("x")));
  REQUIRE(ra.ok());
  REQUIRE(rn.ok());
  CHECK(alpha_eq(rn.value(), ra.value()));
  CHECK(ck.valid(ctx, neg(neg(abs("y", fvar("a"), fvar("b"))))));
}

TEST_CASE("self-application of a typed variable is invalid") {
  ExprPtr e = abs("x", abs("y", tau(), bvar(0)), app(bvar(0), bvar(0)));
  Context empty;
  Checker ck;
  CHECK(!ck.valid(empty, e));
  REQUIRE(ck.last_error());
  CHECK(ck.last_error()->kind == ErrKind::ArgumentMismatch);
}

TEST_CASE("check requires a typable target") {
  Context empty;
  Checker ck;
  ExprPtr I = abs("x", tau(), bvar(0));
  ExprPtr C = abs("x", tau(), tau());
  CHECK(ck.check(empty, I, C).ok());
  // Conversion on the target side: C beta-expands to ([y:tau]C tau).
  CHECK(ck.check(empty, I, app(abs("y", tau(), C), tau())).ok());
  // P = [x:tau][y!x]tau is typable, but not by itself.
  ExprPtr P = abs("x", tau(), exi("y", bvar(0), tau()));
  auto rp = ck.infer(empty, P);
  REQUIRE(rp.ok());
  CHECK(alpha_eq(rp.value(), abs("x", tau(), abs("y", bvar(0), tau()))));
  auto bad = ck.check(empty, P, P);
  REQUIRE(!bad.ok());
  CHECK(bad.error().kind == ErrKind::BodyMismatch);
  // An untypable target is rejected outright.
  CHECK(!ck.check(empty, tau(), app(tau(), tau())).ok());
}

TEST_CASE("context validation") {
  Checker ck;
  CHECK(ck.check_context(props_ctx()).ok());
  Context bad;
  bad.extend("x", fvar("missing"));
  auto r = ck.check_context(bad);
  REQUIRE(!r.ok());
  CHECK(r.error().kind == ErrKind::IllFormedContext);
}

TEST_CASE("fuel exhaustion surfaces as a typing error") {
  ExprPtr self = abs("x", tau(), app(bvar(0), bvar(0)));
  Context ctx;
  ctx.extend("f", abs("x", app(self, self), tau()));
  ctx.extend("u", app(self, self));
  CHECK(infer_err(ctx, app(fvar("f"), fvar("u")), 200) == ErrKind::FuelExhausted);
}

TEST_CASE("error paths point at the offending subexpression") {
  Context ctx = props_ctx();
  Checker ck;
  auto r = ck.infer(ctx, prod(fvar("x"), app(fvar("P"), fvar("b"))));
  REQUIRE(!r.ok());
  CHECK(r.error().kind == ErrKind::ArgumentMismatch);
  CHECK(r.error().path == Path{1});
  CHECK(alpha_eq(r.error().expected, fvar("a")));
  CHECK(alpha_eq(r.error().actual, tau()));
  CHECK(!describe(r.error()).empty());
}

TEST_CASE("certificates replay") {
  Context ctx = props_ctx();
  Checker ck(kDefaultFuel, /*record=*/true);
  ExprPtr pd = pdef("y", fvar("x"), fvar("z"), app(fvar("P"), bvar(0)));
  REQUIRE(ck.infer(ctx, pd).ok());
  CertPtr cert = ck.certificate();
  REQUIRE(cert);
  CHECK(cert->rule == "def");
  std::string why;
  CHECK_MESSAGE(replay_certificate(cert, kDefaultFuel, &why), why);

  // A tampered certificate must not replay.
  auto forged = std::make_shared<Cert>(*cert);
  forged->type = tau();
  CHECK(!replay_certificate(forged));
}

TEST_CASE("inferred types are themselves valid") {
  Context ctx = props_ctx();
  Checker ck;
  for (const ExprPtr& e : {app(fvar("P"), fvar("x")),
                           pdef("y", fvar("x"), fvar("z"), app(fvar("P"), bvar(0))),
                           prod(fvar("x"), fvar("z")),
                           abs("q", fvar("a"), prod(bvar(0), fvar("x")))}) {
    auto r = ck.infer(ctx, e);
    REQUIRE(r.ok());
    CHECK(ck.valid(ctx, r.value()));
  }
}
