// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "dcheck/elaborate.hpp"
#include "dcheck/expr.hpp"
#include "dcheck/harness.hpp"
#include "dcheck/norming.hpp"
#include "dcheck/print.hpp"
#include "dcheck/reduce.hpp"
#include "dcheck/subst_machine.hpp"
#include "dcheck/surface.hpp"
#include "dcheck/typing.hpp"

using namespace dcheck;
using nlohmann::json;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json load_manifest() {
  std::ifstream in(std::string(CORPUS_DIR) + "/manifest.json");
  json m;
  in >> m;
  return m;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

int main() {
  json manifest = load_manifest();

  // Lowered corpus expressions, collected during the corpus run and reused by
  // the consistency smoke test and the round-trip criterion.
  std::vector<ExprPtr> corpus_exprs;

  // --- 1: golden corpus ---------------------------------------------------
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    int ok_checks = 0;
    std::set<std::string> files;
    std::set<std::string> counted;
    for (const auto& group : manifest["groups"]) {
      if (group["name"] == "negative") continue;
      Elaborator elab;
      for (const auto& f : group["files"]) {
        std::string file = f;
        Theory th = parse_theory_file(std::string(CORPUS_DIR) + "/" + file);
        for (const auto& v : elab.run(th, RunOptions{})) {
          if (!v.ok) {
            ok = false;
            std::fprintf(stderr, "  %s:%d %s\n", file.c_str(), v.span.line,
                         v.detail.c_str());
          }
          if (v.ok && v.kind == "check" && !counted.count(file)) ++ok_checks;
        }
        if (!counted.count(file)) {
          files.insert(file);
          for (const auto& d : th.directives) {
            // Scheme templates contain parameter holes; everything else
            // lowers in the ambient environment.
            if (d.k == Directive::K::Scheme) continue;
            for (const SPtr& e : {d.e1, d.e2})
              if (e) corpus_exprs.push_back(elab.lower(e, true));
          }
        }
        counted.insert(file);
      }
    }
    double dt = seconds_since(t0);
    ok = ok && ok_checks >= 30 && files.size() >= 10 && dt < 10.0;
    report(1, ok, "golden corpus: " + std::to_string(ok_checks) + " ok checks across " +
                      std::to_string(files.size()) + " files in " + fmt(dt) + "s (< 10s)");
  }

  // --- 2: negative suite --------------------------------------------------
  {
    Checker ck;
    Context empty;
    bool ok = true;

    ExprPtr I = abs("x", tau(), bvar(0));
    ExprPtr C = abs("x", tau(), tau());
    auto r1 = ck.infer(empty, app(I, C));
    ok = ok && !r1.ok() && r1.error().kind == ErrKind::ArgumentMismatch;

    ok = ok && !ck.valid(empty, abs("x", abs("y", tau(), bvar(0)), app(bvar(0), bvar(0))));

    Context exi_ctx;
    exi_ctx.extend("a", tau());
    exi_ctx.extend("b", tau());
    exi_ctx.extend("x", exi("y", fvar("a"), fvar("b")));
    exi_ctx.extend("z", fvar("a"));
    auto r3 = ck.infer(exi_ctx, app(fvar("x"), fvar("z")));
    ok = ok && !r3.ok() && r3.error().kind == ErrKind::NotAFunction;

    // Consistency smoke: nothing types to [x:tau]x under the empty context —
    // not any corpus expression, not any generated valid term (closed over
    // its own context).
    ExprPtr ff = abs("x", tau(), bvar(0));
    int tried = 0;
    for (const auto& e : corpus_exprs) {
      if (ck.check(empty, e, ff).ok()) ok = false;
      ++tried;
    }
    GenConfig cfg;
    cfg.seed = 77;
    cfg.max_depth = 6;
    Generator gen(cfg);
    for (int i = 0; i < 500; ++i) {
      Judgment j = gen.next();
      if (ck.check(empty, j.ctx.abstraction(j.subject), ff).ok()) ok = false;
      ++tried;
    }
    report(2, ok, "negative suite: 3 pinned rejections; no proof of falsehood among " +
                      std::to_string(tried) + " candidates");
  }

  // --- 3: confluence ------------------------------------------------------
  {
    auto t0 = std::chrono::steady_clock::now();
    GenConfig cfg;
    cfg.seed = 101;
    cfg.cases = 10000;
    cfg.max_depth = 8;
    PropertyReport rep = run_property("confluence", cfg);
    double dt = seconds_since(t0);
    bool ok = rep.cases == 10000 && rep.failures == 0 && dt < 60.0;
    report(3, ok, "confluence: leftmost-outermost vs rightmost-innermost on " +
                      std::to_string(rep.cases) + " terms, " + std::to_string(rep.failures) +
                      " mismatches, " + fmt(dt) + "s (< 60s)");
  }

  // --- 4: subject reduction ----------------------------------------------
  {
    GenConfig cfg;
    cfg.seed = 102;
    cfg.cases = 1000;
    cfg.max_depth = 7;
    PropertyReport rep = run_property("subject-reduction", cfg);
    bool ok = rep.cases == 1000 && rep.failures == 0;
    report(4, ok, "subject reduction: every one-step reduct of " + std::to_string(rep.cases) +
                      " judgments keeps its type, " + std::to_string(rep.failures) + " failures");
  }

  // --- 5: norming ---------------------------------------------------------
  {
    GenConfig cfg;
    cfg.seed = 103;
    cfg.cases = 1000;
    cfg.max_depth = 7;
    PropertyReport rep = run_property("norming", cfg);
    bool ok = rep.cases == 1000 && rep.failures == 0;

    // Pinned regression triple.
    Context ctx;
    ctx.extend("p", tau());
    ctx.extend("q", tau());
    ctx.extend("z", abs("x", fvar("p"), abs("y", fvar("q"), tau())));
    ctx.extend("w", abs("x", tau(), bvar(0)));
    Checker ck;
    ExprPtr good = abs("x", fvar("p"), app(fvar("z"), bvar(0)));
    ExprPtr normable_only = abs("x", fvar("p"), app(fvar("z"), fvar("p")));
    ExprPtr neither = abs("x", abs("y", tau(), bvar(0)), app(bvar(0), bvar(0)));
    auto n1 = norm(ctx, good);
    auto n2 = norm(ctx, normable_only);
    ok = ok && ck.valid(ctx, good) && n1 && norm_to_string(*n1) == "[tau, [tau, tau]]";
    ok = ok && !ck.valid(ctx, normable_only) && n2 && norm_eq(*n1, *n2);
    ok = ok && !ck.valid(ctx, neither) && !norm(ctx, neither) && redexes(neither).empty();
    report(5, ok, "norming: subject/type/step invariance on 1000 judgments, " +
                      std::to_string(rep.failures) +
                      " failures; regression triple reproduces [tau, [tau, tau]]");
  }

  // --- 6: oracle equivalence ----------------------------------------------
  {
    GenConfig cfg;
    cfg.seed = 104;
    cfg.cases = 5000;
    cfg.max_depth = 7;
    PropertyReport rep = run_property("es-oracle", cfg);
    bool ok = rep.cases == 5000 && rep.failures == 0;
    report(6, ok, "substitution-machine oracle agrees with the normalizer on " +
                      std::to_string(rep.cases) + " terms, " + std::to_string(rep.failures) +
                      " mismatches");
  }

  // --- 7: strong-normalization fuel check ----------------------------------
  {
    GenConfig cfg;
    cfg.seed = 105;
    cfg.cases = 10000;
    cfg.max_depth = 8;
    cfg.fuel = 1000000;
    PropertyReport rep = run_property("sn-fuel", cfg);
    bool ok = rep.cases == 10000 && rep.failures == 0;
    report(7, ok, "strong normalization: 0 fuel exhaustions at 10^6 over " +
                      std::to_string(rep.cases) + " valid terms; max observed steps " +
                      std::to_string(rep.max_steps));
  }

  // --- 8: normal-form classifier ------------------------------------------
  {
    GenConfig cfg;
    cfg.seed = 106;
    cfg.cases = 5000;
    cfg.max_depth = 7;
    PropertyReport rep = run_property("classifier", cfg);
    bool ok = rep.cases == 5000 && rep.failures == 0;
    report(8, ok, "classifier: irreducible iff canonical-or-neutral on " +
                      std::to_string(rep.cases) + " closed valid terms, " +
                      std::to_string(rep.failures) + " failures");
  }

  // --- 9: round-trip -------------------------------------------------------
  {
    bool ok = true;
    int n = 0;
    for (const auto& e : corpus_exprs) {
      Elaborator scratch;
      ExprPtr back = scratch.lower(parse_expr(print(e)), true);
      if (!alpha_eq(back, e)) {
        ok = false;
        std::fprintf(stderr, "  corpus round-trip failed: %s\n", print(e).c_str());
      }
      ++n;
    }
    GenConfig cfg;
    cfg.seed = 107;
    cfg.cases = 10000;
    cfg.max_depth = 7;
    PropertyReport rep = run_property("roundtrip", cfg);
    ok = ok && rep.cases == 10000 && rep.failures == 0;
    report(9, ok, "round-trip: parse after print is the identity on " + std::to_string(n) +
                      " corpus expressions and " + std::to_string(rep.cases) +
                      " generated terms");
  }

  return failures == 0 ? 0 : 1;
}
