#include "dcheck/norming.hpp"

namespace dcheck {

NormPtr norm_leaf() {
  static const NormPtr leaf = std::make_shared<NormTree>();
  return leaf;
}

NormPtr norm_pair(NormPtr left, NormPtr right) {
  auto n = std::make_shared<NormTree>();
  n->left = std::move(left);
  n->right = std::move(right);
  return n;
}

bool norm_eq(const NormPtr& a, const NormPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->leaf() || b->leaf()) return a->leaf() && b->leaf();
  return norm_eq(a->left, b->left) && norm_eq(a->right, b->right);
}

int norm_size(const NormPtr& n) {
  if (!n) return 0;
  if (n->leaf()) return 1;
  return norm_size(n->left) + norm_size(n->right);
}

std::string norm_to_string(const NormPtr& n) {
  if (!n) return "?";
  if (n->leaf()) return "tau";
  return "[" + norm_to_string(n->left) + ", " + norm_to_string(n->right) + "]";
}

namespace {

using MaybeNorm = std::optional<NormPtr>;

MaybeNorm go(const Context& ctx, const ExprPtr& a) {
  switch (a->kind) {
    case Kind::Tau:
      return norm_leaf();
    case Kind::FVar: {
      auto i = ctx.lookup_index(a->name);
      if (!i) return std::nullopt;
      // Norm of the declared type under the preceding prefix.
      return go(ctx.prefix(*i), ctx.entry(*i).second);
    }
    case Kind::BVar:
      return std::nullopt;  // callers open binders first
    case Kind::Abs:
    case Kind::Exi: {
      auto na = go(ctx, a->kids[0]);
      if (!na) return std::nullopt;
      Name x = fresh_name(a->name, ctx.names());
      Context inner = ctx;
      inner.extend(x, a->kids[0]);
      auto nb = go(inner, open_with(a->kids[1], x));
      if (!nb) return std::nullopt;
      return norm_pair(*na, *nb);
    }
    case Kind::App: {
      auto nf = go(ctx, a->kids[0]);
      auto nu = go(ctx, a->kids[1]);
      if (!nf || !nu || (*nf)->leaf()) return std::nullopt;
      if (!norm_eq((*nf)->left, *nu)) return std::nullopt;
      return (*nf)->right;
    }
    case Kind::Def: {
      auto nw = go(ctx, a->kids[0]);
      auto np = go(ctx, a->kids[1]);
      if (!nw || !np) return std::nullopt;
      // The protected variable abbreviates the witness. Declaring x *at* the
      // witness makes norm(x) = norm(witness), since a variable is normed via
      // its declared entry under the preceding prefix.
      Name x = fresh_name(a->name, ctx.names());
      Context inner = ctx;
      inner.extend(x, a->kids[0]);
      auto nt = go(inner, open_with(a->kids[2], x));
      if (!nt) return std::nullopt;
      if (!norm_eq(*np, *nt)) return std::nullopt;
      return norm_pair(*nw, *np);
    }
    case Kind::Proj1: {
      auto ns = go(ctx, a->kids[0]);
      if (!ns || (*ns)->leaf()) return std::nullopt;
      return (*ns)->left;
    }
    case Kind::Proj2: {
      auto ns = go(ctx, a->kids[0]);
      if (!ns || (*ns)->leaf()) return std::nullopt;
      return (*ns)->right;
    }
    case Kind::Prod:
    case Kind::Sum:
    case Kind::InjL:
    case Kind::InjR: {
      auto na = go(ctx, a->kids[0]);
      auto nb = go(ctx, a->kids[1]);
      if (!na || !nb) return std::nullopt;
      return norm_pair(*na, *nb);
    }
    case Kind::Case: {
      auto nl = go(ctx, a->kids[0]);
      auto nr = go(ctx, a->kids[1]);
      if (!nl || !nr || (*nl)->leaf() || (*nr)->leaf()) return std::nullopt;
      if (!norm_eq((*nl)->right, (*nr)->right)) return std::nullopt;
      return norm_pair(norm_pair((*nl)->left, (*nr)->left), (*nl)->right);
    }
    case Kind::Neg:
      return go(ctx, a->kids[0]);
    case Kind::Subst:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<NormPtr> norm(const Context& ctx, const ExprPtr& a) { return go(ctx, a); }

}  // namespace dcheck
