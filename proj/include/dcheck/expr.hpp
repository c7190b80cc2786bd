#pragma once

// Expression kernel: the 14-constructor term language plus an internalized
// substitution node used by the explicit-substitution machine.
//
// Representation is locally nameless: bound variables are de Bruijn indices
// (BVar), free variables are named (FVar). Binders keep a display-name hint
// that is ignored by alpha_eq, so alpha-equivalence is structural equality.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dcheck {

using Name = std::string;

enum class Kind {
  Tau,    // primitive constant
  BVar,   // bound variable (de Bruijn index)
  FVar,   // free variable (named)
  Abs,    // universal abstraction  [x:a]b       kids = {dom, body*}
  App,    // application            (a b)        kids = {fun, arg}
  Exi,    // existential abstraction [x!a]b      kids = {dom, body*}
  Def,    // protected definition   <x:=a,c:d>   kids = {witness, proof, template*}
  Proj1,  // left projection        a.1          kids = {a}
  Proj2,  // right projection       a.2          kids = {a}
  Prod,   // product                [a,b]        kids = {a, b}
  Sum,    // sum                    [a+b]        kids = {a, b}
  InjL,   // left injection         inl{a,B}     kids = {value, otherTy}
  InjR,   // right injection        inr{B,a}     kids = {otherTy, value}
  Case,   // case distinction       case{a,b}    kids = {left, right}
  Neg,    // negation               ~a           kids = {a}
  Subst,  // internalized substitution [x:=a]b   kids = {def, body*}
};
// Children marked * are the binding positions (index 0 refers to the binder).

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Kind kind;
  int index = 0;              // BVar only
  Name name;                  // FVar name, or binder display hint
  std::vector<ExprPtr> kids;
};

// Which child, if any, is under the binder. Returns -1 for non-binders.
inline int binding_child(Kind k) {
  switch (k) {
    case Kind::Abs:
    case Kind::Exi:
    case Kind::Subst: return 1;
    case Kind::Def: return 2;
    default: return -1;
  }
}

// Constructors.
ExprPtr tau();
ExprPtr bvar(int index);
ExprPtr fvar(const Name& name);
ExprPtr abs(const Name& hint, ExprPtr dom, ExprPtr body);
ExprPtr exi(const Name& hint, ExprPtr dom, ExprPtr body);
ExprPtr app(ExprPtr fun, ExprPtr arg);
ExprPtr pdef(const Name& hint, ExprPtr witness, ExprPtr proof, ExprPtr tmpl);
ExprPtr proj1(ExprPtr a);
ExprPtr proj2(ExprPtr a);
ExprPtr prod(ExprPtr a, ExprPtr b);
ExprPtr sum(ExprPtr a, ExprPtr b);
ExprPtr injl(ExprPtr value, ExprPtr other_ty);
ExprPtr injr(ExprPtr other_ty, ExprPtr value);
ExprPtr kase(ExprPtr left, ExprPtr right);
ExprPtr neg(ExprPtr a);
ExprPtr subst(const Name& hint, ExprPtr def, ExprPtr body);

// Rebuild a node with new children (keeps kind/index/name).
ExprPtr with_kids(const ExprPtr& e, std::vector<ExprPtr> kids);

// Shift dangling indices >= cutoff by d. d may be negative; the caller must
// ensure no index in [cutoff, cutoff - d) occurs.
ExprPtr shift(const ExprPtr& e, int d, int cutoff = 0);

// Replace the binder variable of an opened body: substitute v (shifted as
// needed) for BVar 0 and unshift the remaining indices.
ExprPtr instantiate(const ExprPtr& body, const ExprPtr& v);

// open/close convert between the bound and the free view of a binder body.
ExprPtr open_with(const ExprPtr& body, const Name& x);
ExprPtr close_over(const ExprPtr& e, const Name& x);

// Capture-avoiding substitution of a free variable.
ExprPtr subst_free(const ExprPtr& e, const Name& x, const ExprPtr& v);

std::set<Name> free_vars(const ExprPtr& e);
bool occurs_free(const ExprPtr& e, const Name& x);
bool occurs_bvar(const ExprPtr& e, int j);       // dangling index j occurs?
bool locally_closed(const ExprPtr& e);
bool contains_subst(const ExprPtr& e);

// Structural equality up to binder display names, i.e. alpha-equivalence.
bool alpha_eq(const ExprPtr& a, const ExprPtr& b);

// Deterministic fresh-name generation: tries hint, then hint1, hint2, ...
Name fresh_name(const Name& hint, const std::set<Name>& avoid);

class NameSupply {
 public:
  // Globally fresh internal names; never collide with parsed identifiers.
  Name fresh(const Name& hint = "x");

 private:
  std::uint64_t counter_ = 0;
};

// Ordered typed declarations (x1:a1, ..., xn:an) with distinct names.
class Context {
 public:
  Context() = default;

  // Returns false (and leaves the context unchanged) on duplicate names.
  bool extend(const Name& x, ExprPtr type);

  std::optional<ExprPtr> lookup(const Name& x) const;
  std::optional<std::size_t> lookup_index(const Name& x) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::pair<Name, ExprPtr>& entry(std::size_t i) const { return entries_[i]; }
  Context prefix(std::size_t n) const;
  std::set<Name> names() const;

  // [Gamma]a: wrap a in universal abstractions right-to-left.
  ExprPtr abstraction(ExprPtr a) const;

  bool operator==(const Context& other) const;

 private:
  std::vector<std::pair<Name, ExprPtr>> entries_;
};

}  // namespace dcheck
