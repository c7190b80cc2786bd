// Command-line checker for `.d` theory files and ad-hoc expressions.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcheck/elaborate.hpp"
#include "dcheck/harness.hpp"
#include "dcheck/norming.hpp"
#include "dcheck/print.hpp"
#include "dcheck/reduce.hpp"
#include "dcheck/subst_machine.hpp"
#include "dcheck/surface.hpp"
#include "dcheck/typing.hpp"

using nlohmann::json;
using namespace dcheck;

namespace {

int expr_depth(const ExprPtr& e) {
  int d = 0;
  for (const auto& k : e->kids) d = std::max(d, expr_depth(k));
  return d + 1;
}

struct Output {
  bool as_json = false;
  json verdicts = json::array();
  long steps = 0;
  int max_depth = 0;

  void verdict(const Verdict& v) {
    if (as_json) {
      verdicts.push_back({{"file", v.file},
                          {"index", v.index},
                          {"kind", v.kind},
                          {"ok", v.ok},
                          {"detail", v.detail},
                          {"span", {{"line", v.span.line}, {"col", v.span.col}}}});
    } else {
      std::cout << (v.ok ? "ok    " : "FAIL  ") << v.file << ":" << v.span.line << "  " << v.kind;
      if (!v.detail.empty()) std::cout << "  " << v.detail;
      std::cout << "\n";
    }
  }

  void flush() {
    if (as_json)
      std::cout << json{{"verdicts", verdicts}, {"stats", {{"steps", steps}, {"maxDepth", max_depth}}}}.dump(2)
                << "\n";
  }
};

void print_cert(const CertPtr& c, int indent) {
  if (!c) return;
  std::cout << std::string(indent * 2, ' ') << c->rule << ": " << print(c->subject) << " : "
            << print(c->type) << "\n";
  for (const auto& p : c->premises) print_cert(p, indent + 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"checker for the lambda-typed calculus with existential abstraction"};
  cli.require_subcommand(1);

  long fuel = kDefaultFuel;
  if (const char* env = std::getenv("D_FUEL")) fuel = std::atol(env);
  bool as_json = false, explain = false, oracle = false;
  cli.add_option("--fuel", fuel, "reduction step budget");
  cli.add_flag("--json", as_json, "machine-readable output");
  cli.add_flag("--explain", explain, "record and replay rule certificates");
  cli.add_flag("--oracle", oracle, "cross-check normalization against the substitution machine");

  std::vector<std::string> files, ctx_files;
  std::string expr_text, property;
  bool want_nf = false, want_trace = false;
  std::uint64_t seed = 1;
  int cases = 1000, depth = 6;

  auto* c_check = cli.add_subcommand("check", "check theory files (shared, growing context)");
  c_check->add_option("files", files, "theory files")->required()->expected(-1);

  auto* c_typeof = cli.add_subcommand("typeof", "infer the type of an expression");
  c_typeof->add_option("-e,--expr", expr_text, "expression")->required();
  c_typeof->add_option("--ctx", ctx_files, "theory files providing the ambient context");
  c_typeof->add_flag("--nf", want_nf, "normalize the inferred type");

  auto* c_norm = cli.add_subcommand("normalize", "reduce an expression to normal form");
  c_norm->add_option("-e,--expr", expr_text, "expression")->required();
  c_norm->add_option("--ctx", ctx_files, "theory files providing the ambient context");
  c_norm->add_flag("--trace", want_trace, "print each reduction step");

  auto* c_nu = cli.add_subcommand("norm", "compute the norming tree of an expression");
  c_nu->add_option("-e,--expr", expr_text, "expression")->required();
  c_nu->add_option("--ctx", ctx_files, "theory files providing the ambient context");

  auto* c_cls = cli.add_subcommand("classify", "classify an expression's normal-form shape");
  c_cls->add_option("-e,--expr", expr_text, "expression")->required();
  c_cls->add_option("--ctx", ctx_files, "theory files providing the ambient context");

  auto* c_meta = cli.add_subcommand("meta", "run a randomized metatheory property");
  c_meta->add_option("property", property, "one of: confluence, subject-reduction, uniqueness, "
                                           "norming, sn-fuel, es-oracle, classifier, roundtrip")
      ->required();
  c_meta->add_option("--seed", seed, "generator seed");
  c_meta->add_option("--cases", cases, "number of cases");
  c_meta->add_option("--depth", depth, "maximum generation depth");

  CLI11_PARSE(cli, argc, argv);

  Output out;
  out.as_json = as_json;
  bool any_fail = false;

  try {
    Elaborator elab(fuel);
    RunOptions opts;
    opts.fuel = fuel;
    opts.oracle = oracle;
    opts.explain = explain;

    auto load_ctx = [&](const std::vector<std::string>& paths) {
      for (const auto& p : paths) {
        RunStats st;
        for (const auto& v : elab.run(parse_theory_file(p), opts, &st))
          if (!v.ok) throw ElabError("context file " + v.file + " failed: " + v.detail, v.span);
        out.steps += st.steps;
      }
    };

    if (*c_check) {
      for (const auto& f : files) {
        RunStats st;
        auto vs = elab.run(parse_theory_file(f), opts, &st);
        out.steps += st.steps;
        for (const auto& v : vs) {
          out.verdict(v);
          if (!v.ok) any_fail = true;
        }
      }
    } else if (*c_typeof) {
      load_ctx(ctx_files);
      ExprPtr e = elab.lower(parse_expr(expr_text), true);
      Checker ck(fuel, explain);
      auto r = ck.infer(elab.context(), e);
      if (!r.ok()) {
        std::cout << describe(r.error()) << "\n";
        return 1;
      }
      ExprPtr ty = r.value();
      if (want_nf) ty = normalize(ty, fuel);
      out.max_depth = expr_depth(ty);
      if (explain) {
        std::string why;
        if (!replay_certificate(ck.certificate(), fuel, &why)) {
          std::cout << "certificate replay failed: " << why << "\n";
          return 1;
        }
        print_cert(ck.certificate(), 0);
      }
      if (as_json)
        out.verdicts.push_back({{"file", "<expr>"}, {"index", 0}, {"kind", "typeof"}, {"ok", true},
                                {"detail", print(ty)}, {"span", {{"line", 0}, {"col", 0}}}});
      else
        std::cout << print(ty) << "\n";
    } else if (*c_norm) {
      load_ctx(ctx_files);
      ExprPtr e = elab.lower(parse_expr(expr_text), true);
      long steps = 0;
      std::vector<TraceStep> trace;
      ExprPtr nf = normalize(e, fuel, Strategy::LeftmostOutermost, &steps, want_trace ? &trace : nullptr);
      if (oracle && !alpha_eq(nf, es::es_normalize(e, fuel))) {
        std::cerr << "oracle mismatch against the substitution machine\n";
        return 1;
      }
      out.steps += steps;
      out.max_depth = expr_depth(nf);
      for (const auto& t : trace) std::cout << "  " << rule_name(t.rule) << "  ->  " << print(t.result) << "\n";
      if (as_json)
        out.verdicts.push_back({{"file", "<expr>"}, {"index", 0}, {"kind", "normalize"}, {"ok", true},
                                {"detail", print(nf)}, {"span", {{"line", 0}, {"col", 0}}}});
      else
        std::cout << print(nf) << "\n";
    } else if (*c_nu) {
      load_ctx(ctx_files);
      ExprPtr e = elab.lower(parse_expr(expr_text), true);
      auto n = norm(elab.context(), e);
      std::cout << (n ? norm_to_string(*n) : "undefined") << "\n";
      if (!n) return 1;
    } else if (*c_cls) {
      load_ctx(ctx_files);
      ExprPtr e = elab.lower(parse_expr(expr_text), true);
      std::cout << normal_class_name(classify(e)) << "\n";
    } else if (*c_meta) {
      GenConfig cfg;
      cfg.seed = seed;
      cfg.cases = cases;
      cfg.max_depth = depth;
      cfg.fuel = fuel;
      PropertyReport rep = run_property(property, cfg);
      if (as_json) {
        std::cout << json{{"property", rep.name}, {"cases", rep.cases}, {"failures", rep.failures},
                          {"maxSteps", rep.max_steps}, {"notes", rep.notes}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << rep.name << ": " << rep.cases << " cases, " << rep.failures
                  << " failures, max steps " << rep.max_steps << "\n";
        for (const auto& n : rep.notes) std::cout << "  " << n << "\n";
      }
      if (rep.failures > 0) return 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << " (line " << e.span.line << ")\n";
    return 2;
  } catch (const ElabError& e) {
    std::cerr << "elaboration error: " << e.what() << "\n";
    return 2;
  } catch (const FuelExhausted& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  out.flush();
  return any_fail ? 1 : 0;
}
