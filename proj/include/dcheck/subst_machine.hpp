#pragma once

// Reduction with delayed, explicit substitutions. Beta steps produce
// substitution nodes; `use` unfolds environment entries, `rem` drops unused
// ones, and negation steps are bundled. Used as an independent oracle for
// the direct-substitution normalizer.

#include <vector>

#include "dcheck/expr.hpp"
#include "dcheck/reduce.hpp"

namespace dcheck {
namespace es {

// Negation-reduction (pushing negations inward): the double-negation,
// product, sum, and abstraction axioms, closed only under product/sum
// components, abstraction bodies, and negation itself.
bool neg_reducible(const ExprPtr& e);
ExprPtr neg_normalize(const ExprPtr& e);
// All terms reachable in >= 1 negation steps (finite; the relation is
// terminating).
std::vector<ExprPtr> neg_reachable(const ExprPtr& e);

// Definition environment x1:=a1, ..., xn:=an (acyclic by construction).
class Env {
 public:
  void push(const Name& x, ExprPtr def) { entries_.emplace_back(x, std::move(def)); }
  std::optional<ExprPtr> lookup(const Name& x) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
      if (it->first == x) return it->second;
    return std::nullopt;
  }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<Name, ExprPtr>> entries_;
};

// All one-step successors of a under env (the full relation: every redex
// position, every reachable negation bundle). Fresh names for reduction under
// substitution binders come from the supply.
std::vector<ExprPtr> step(const Env& env, const ExprPtr& a, NameSupply& supply);

// Definition evaluation: exhaustively apply use/rem. Total; eliminates every
// substitution node and every env-bound variable.
ExprPtr dnf(const Env& env, const ExprPtr& a, NameSupply& supply);

// Normalize by the machine strategy (outermost, body before definition,
// maximal negation bundles) and read back via dnf. Independent oracle for
// normalize(); agrees with it on normalizing inputs.
ExprPtr es_normalize(const ExprPtr& a, long fuel = kDefaultFuel, long* steps_out = nullptr);

}  // namespace es
}  // namespace dcheck
