#pragma once

// Concrete syntax: expressions and theory files. Parsing produces a surface
// AST (names unresolved, scheme instantiations explicit); the elaborator
// lowers it to kernel expressions.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcheck/expr.hpp"

namespace dcheck {

struct Span {
  int line = 0;  // 1-based; 0 = unknown
  int col = 0;
};

struct ParseError : std::runtime_error {
  Span span;
  ParseError(const std::string& what, Span s) : std::runtime_error(what), span(s) {}
};

struct SNode;
using SPtr = std::shared_ptr<const SNode>;

struct SNode {
  enum class K {
    Tau, Ident, Abs, Exi, App, PDef, Proj1, Proj2,
    Prod, Sum, InjL, InjR, Case, Neg, SchemeInst,
  };
  K k;
  Name name;               // Ident, binder name, scheme name
  std::vector<SPtr> kids;  // same child layout as the kernel constructors
  Span span;
};

SPtr snode(SNode::K k, Name name, std::vector<SPtr> kids, Span span = {});

struct Directive {
  enum class K { Axiom, Def, Scheme, Check, Normalize, AssertConverts, AssertInvalid };
  K k;
  Span span;
  Name name;                 // Axiom/Def/Scheme
  std::vector<Name> params;  // Scheme
  SPtr e1;                   // main expression / axiom type / scheme template
  SPtr e2;                   // Check target / AssertConverts right-hand side
};

const char* directive_kind_name(Directive::K k);

struct Theory {
  std::string file;
  std::vector<Directive> directives;
};

// Parse a single expression (the whole string must be consumed).
SPtr parse_expr(const std::string& text, const std::string& what = "<expr>");

Theory parse_theory(const std::string& text, const std::string& file = "<theory>");
Theory parse_theory_file(const std::string& path);

}  // namespace dcheck
