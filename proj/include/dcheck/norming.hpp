#pragma once

// Norming: a partial map from expressions to binary tau-trees. Normable valid
// expressions and their types receive the same tree, and reduction preserves
// the tree, which yields the termination argument for reduction.

#include <memory>
#include <optional>
#include <string>

#include "dcheck/expr.hpp"

namespace dcheck {

struct NormTree;
using NormPtr = std::shared_ptr<const NormTree>;

struct NormTree {
  NormPtr left, right;  // both null for the leaf
  bool leaf() const { return !left; }
};

NormPtr norm_leaf();
NormPtr norm_pair(NormPtr left, NormPtr right);
bool norm_eq(const NormPtr& a, const NormPtr& b);
int norm_size(const NormPtr& n);  // number of leaves
std::string norm_to_string(const NormPtr& n);  // e.g. [tau, [tau, tau]]

// The norm of a under ctx, or nullopt when undefined. A variable's norm is
// taken under the prefix of the context preceding its declaration.
std::optional<NormPtr> norm(const Context& ctx, const ExprPtr& a);

}  // namespace dcheck
