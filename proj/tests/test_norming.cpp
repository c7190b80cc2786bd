#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dcheck/expr.hpp"
#include "dcheck/norming.hpp"
#include "dcheck/reduce.hpp"
#include "dcheck/typing.hpp"

using namespace dcheck;

namespace {

bool has_norm(const Context& ctx, const ExprPtr& e, const NormPtr& want) {
  auto n = norm(ctx, e);
  return n && norm_eq(*n, want);
}

NormPtr leaf() { return norm_leaf(); }

}  // namespace

TEST_CASE("basic norms") {
  Context empty;
  CHECK(has_norm(empty, tau(), leaf()));
  CHECK(has_norm(empty, abs("x", tau(), bvar(0)), norm_pair(leaf(), leaf())));
  CHECK(has_norm(empty, exi("x", tau(), bvar(0)), norm_pair(leaf(), leaf())));
  CHECK(has_norm(empty, prod(tau(), tau()), norm_pair(leaf(), leaf())));
  CHECK(has_norm(empty, sum(tau(), abs("x", tau(), tau())),
                 norm_pair(leaf(), norm_pair(leaf(), leaf()))));
  // Negation is transparent.
  CHECK(has_norm(empty, neg(neg(prod(tau(), tau()))), norm_pair(leaf(), leaf())));
}

TEST_CASE("variables norm through their declared types") {
  Context ctx;
  ctx.extend("a", tau());
  ctx.extend("x", fvar("a"));
  ctx.extend("f", abs("y", fvar("a"), fvar("a")));
  CHECK(has_norm(ctx, fvar("a"), leaf()));
  CHECK(has_norm(ctx, fvar("x"), leaf()));
  CHECK(has_norm(ctx, fvar("f"), norm_pair(leaf(), leaf())));
  CHECK(has_norm(ctx, app(fvar("f"), fvar("x")), leaf()));
  // An undeclared variable has no norm.
  CHECK(!norm(ctx, fvar("nope")));
  // Application of a non-function shape has no norm.
  CHECK(!norm(ctx, app(fvar("x"), fvar("x"))));
}

TEST_CASE("protected definitions and eliminations") {
  Context ctx;
  ctx.extend("a", tau());
  ctx.extend("x", fvar("a"));
  // <y:=x, x : a>: the binder is declared at the witness, and the proof must
  // norm like the template.
  ExprPtr pd = pdef("y", fvar("x"), fvar("x"), fvar("a"));
  CHECK(has_norm(ctx, pd, norm_pair(leaf(), leaf())));
  CHECK(has_norm(ctx, proj1(pd), leaf()));
  CHECK(has_norm(ctx, proj2(pd), leaf()));
  // Proof and template trees that disagree: undefined.
  ExprPtr bad = pdef("y", fvar("x"), abs("q", tau(), tau()), fvar("a"));
  CHECK(!norm(ctx, bad));
}

TEST_CASE("injections and case") {
  Context ctx;
  ctx.extend("a", tau());
  ctx.extend("u", fvar("a"));
  CHECK(has_norm(ctx, injl(fvar("u"), tau()), norm_pair(leaf(), leaf())));
  CHECK(has_norm(ctx, injr(tau(), fvar("u")), norm_pair(leaf(), leaf())));
  Context c2;
  c2.extend("a", tau());
  c2.extend("f", abs("x", fvar("a"), fvar("a")));
  // case{f,g} norms to [[dom f, dom g], shared codomain].
  CHECK(has_norm(c2, kase(fvar("f"), fvar("f")),
                 norm_pair(norm_pair(leaf(), leaf()), leaf())));
}

TEST_CASE("the three regression judgments") {
  // p,q:tau, z:[x:p][y:q]tau, w:[x:tau]x
  Context ctx;
  ctx.extend("p", tau());
  ctx.extend("q", tau());
  ctx.extend("z", abs("x", fvar("p"), abs("y", fvar("q"), tau())));
  ctx.extend("w", abs("x", tau(), bvar(0)));
  Checker ck;
  REQUIRE(ck.check_context(ctx).ok());

  // [x:p](z x): valid, and normable with tree [tau, [tau, tau]].
  ExprPtr good = abs("x", fvar("p"), app(fvar("z"), bvar(0)));
  CHECK(ck.valid(ctx, good));
  auto n = norm(ctx, good);
  REQUIRE(n);
  CHECK(norm_to_string(*n) == "[tau, [tau, tau]]");
  CHECK(norm_eq(*n, norm_pair(leaf(), norm_pair(leaf(), leaf()))));

  // [x:p](z p): normable (same tree) but invalid.
  ExprPtr normable_only = abs("x", fvar("p"), app(fvar("z"), fvar("p")));
  CHECK(!ck.valid(ctx, normable_only));
  auto n2 = norm(ctx, normable_only);
  REQUIRE(n2);
  CHECK(norm_eq(*n2, *n));

  // [x:[y:tau]y](x x): neither valid nor normable, yet strongly normalizing.
  ExprPtr neither = abs("x", abs("y", tau(), bvar(0)), app(bvar(0), bvar(0)));
  CHECK(!ck.valid(ctx, neither));
  CHECK(!norm(ctx, neither));
  CHECK(redexes(neither).empty());  // already a normal form
}

TEST_CASE("norming is preserved by reduction and shared with the type") {
  Context ctx;
  ctx.extend("a", tau());
  ctx.extend("x", fvar("a"));
  ExprPtr e = app(abs("y", fvar("a"), prod(bvar(0), fvar("x"))), fvar("x"));
  auto before = norm(ctx, e);
  REQUIRE(before);
  auto after = norm(ctx, normalize(e));
  REQUIRE(after);
  CHECK(norm_eq(*before, *after));

  Checker ck;
  auto ty = ck.infer(ctx, e);
  REQUIRE(ty.ok());
  auto nt = norm(ctx, ty.value());
  REQUIRE(nt);
  CHECK(norm_eq(*before, *nt));
}

TEST_CASE("tree utilities") {
  NormPtr t = norm_pair(leaf(), norm_pair(leaf(), leaf()));
  CHECK(norm_size(t) == 3);
  CHECK(norm_size(leaf()) == 1);
  CHECK(norm_to_string(leaf()) == "tau");
  CHECK(norm_to_string(t) == "[tau, [tau, tau]]");
  CHECK(norm_eq(t, t));
  CHECK(!norm_eq(t, leaf()));
}
