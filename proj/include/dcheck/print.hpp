#pragma once

// Pretty-printer for expressions. Output re-parses to an alpha-equal term.

#include <string>

#include "dcheck/expr.hpp"

namespace dcheck {

// Concrete syntax using binder display hints (renamed on clashes). Unused
// universal binders print with the arrow sugar [A => B].
std::string print(const ExprPtr& e);

// Hint-independent rendering (binders become positional names); equal strings
// exactly for alpha-equal terms. Used for hashing.
std::string canonical_print(const ExprPtr& e);

std::string print_context(const Context& ctx);

}  // namespace dcheck
