#include "dcheck/expr.hpp"

#include <functional>

namespace dcheck {

namespace {

ExprPtr mk(Kind k, int index, Name name, std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->index = index;
  e->name = std::move(name);
  e->kids = std::move(kids);
  return e;
}

}  // namespace

ExprPtr tau() {
  static const ExprPtr t = mk(Kind::Tau, 0, "", {});
  return t;
}
ExprPtr bvar(int index) { return mk(Kind::BVar, index, "", {}); }
ExprPtr fvar(const Name& name) { return mk(Kind::FVar, 0, name, {}); }
ExprPtr abs(const Name& hint, ExprPtr dom, ExprPtr body) {
  return mk(Kind::Abs, 0, hint, {std::move(dom), std::move(body)});
}
ExprPtr exi(const Name& hint, ExprPtr dom, ExprPtr body) {
  return mk(Kind::Exi, 0, hint, {std::move(dom), std::move(body)});
}
ExprPtr app(ExprPtr fun, ExprPtr arg) {
  return mk(Kind::App, 0, "", {std::move(fun), std::move(arg)});
}
ExprPtr pdef(const Name& hint, ExprPtr witness, ExprPtr proof, ExprPtr tmpl) {
  return mk(Kind::Def, 0, hint, {std::move(witness), std::move(proof), std::move(tmpl)});
}
ExprPtr proj1(ExprPtr a) { return mk(Kind::Proj1, 0, "", {std::move(a)}); }
ExprPtr proj2(ExprPtr a) { return mk(Kind::Proj2, 0, "", {std::move(a)}); }
ExprPtr prod(ExprPtr a, ExprPtr b) {
  return mk(Kind::Prod, 0, "", {std::move(a), std::move(b)});
}
ExprPtr sum(ExprPtr a, ExprPtr b) {
  return mk(Kind::Sum, 0, "", {std::move(a), std::move(b)});
}
ExprPtr injl(ExprPtr value, ExprPtr other_ty) {
  return mk(Kind::InjL, 0, "", {std::move(value), std::move(other_ty)});
}
ExprPtr injr(ExprPtr other_ty, ExprPtr value) {
  return mk(Kind::InjR, 0, "", {std::move(other_ty), std::move(value)});
}
ExprPtr kase(ExprPtr left, ExprPtr right) {
  return mk(Kind::Case, 0, "", {std::move(left), std::move(right)});
}
ExprPtr neg(ExprPtr a) { return mk(Kind::Neg, 0, "", {std::move(a)}); }
ExprPtr subst(const Name& hint, ExprPtr def, ExprPtr body) {
  return mk(Kind::Subst, 0, hint, {std::move(def), std::move(body)});
}

ExprPtr with_kids(const ExprPtr& e, std::vector<ExprPtr> kids) {
  return mk(e->kind, e->index, e->name, std::move(kids));
}

ExprPtr shift(const ExprPtr& e, int d, int cutoff) {
  if (d == 0) return e;
  switch (e->kind) {
    case Kind::Tau:
    case Kind::FVar:
      return e;
    case Kind::BVar:
      return e->index >= cutoff ? bvar(e->index + d) : e;
    default: {
      std::vector<ExprPtr> kids;
      kids.reserve(e->kids.size());
      int bi = binding_child(e->kind);
      for (std::size_t i = 0; i < e->kids.size(); ++i)
        kids.push_back(shift(e->kids[i], d, cutoff + (static_cast<int>(i) == bi ? 1 : 0)));
      return with_kids(e, std::move(kids));
    }
  }
}

ExprPtr instantiate(const ExprPtr& body, const ExprPtr& v) {
  std::function<ExprPtr(const ExprPtr&, int)> go = [&](const ExprPtr& e, int k) -> ExprPtr {
    switch (e->kind) {
      case Kind::Tau:
      case Kind::FVar:
        return e;
      case Kind::BVar:
        if (e->index == k) return shift(v, k);
        if (e->index > k) return bvar(e->index - 1);
        return e;
      default: {
        std::vector<ExprPtr> kids;
        kids.reserve(e->kids.size());
        int bi = binding_child(e->kind);
        for (std::size_t i = 0; i < e->kids.size(); ++i)
          kids.push_back(go(e->kids[i], k + (static_cast<int>(i) == bi ? 1 : 0)));
        return with_kids(e, std::move(kids));
      }
    }
  };
  return go(body, 0);
}

ExprPtr open_with(const ExprPtr& body, const Name& x) { return instantiate(body, fvar(x)); }

ExprPtr close_over(const ExprPtr& e, const Name& x) {
  std::function<ExprPtr(const ExprPtr&, int)> go = [&](const ExprPtr& n, int k) -> ExprPtr {
    switch (n->kind) {
      case Kind::Tau:
        return n;
      case Kind::FVar:
        return n->name == x ? bvar(k) : n;
      case Kind::BVar:
        return n->index >= k ? bvar(n->index + 1) : n;
      default: {
        std::vector<ExprPtr> kids;
        kids.reserve(n->kids.size());
        int bi = binding_child(n->kind);
        for (std::size_t i = 0; i < n->kids.size(); ++i)
          kids.push_back(go(n->kids[i], k + (static_cast<int>(i) == bi ? 1 : 0)));
        return with_kids(n, std::move(kids));
      }
    }
  };
  return go(e, 0);
}

ExprPtr subst_free(const ExprPtr& e, const Name& x, const ExprPtr& v) {
  std::function<ExprPtr(const ExprPtr&, int)> go = [&](const ExprPtr& n, int k) -> ExprPtr {
    switch (n->kind) {
      case Kind::Tau:
      case Kind::BVar:
        return n;
      case Kind::FVar:
        return n->name == x ? shift(v, k) : n;
      default: {
        std::vector<ExprPtr> kids;
        kids.reserve(n->kids.size());
        int bi = binding_child(n->kind);
        for (std::size_t i = 0; i < n->kids.size(); ++i)
          kids.push_back(go(n->kids[i], k + (static_cast<int>(i) == bi ? 1 : 0)));
        return with_kids(n, std::move(kids));
      }
    }
  };
  return go(e, 0);
}

std::set<Name> free_vars(const ExprPtr& e) {
  std::set<Name> out;
  std::function<void(const ExprPtr&)> go = [&](const ExprPtr& n) {
    if (n->kind == Kind::FVar) {
      out.insert(n->name);
      return;
    }
    for (const auto& k : n->kids) go(k);
  };
  go(e);
  return out;
}

bool occurs_free(const ExprPtr& e, const Name& x) {
  if (e->kind == Kind::FVar) return e->name == x;
  for (const auto& k : e->kids)
    if (occurs_free(k, x)) return true;
  return false;
}

bool occurs_bvar(const ExprPtr& e, int j) {
  switch (e->kind) {
    case Kind::Tau:
    case Kind::FVar:
      return false;
    case Kind::BVar:
      return e->index == j;
    default: {
      int bi = binding_child(e->kind);
      for (std::size_t i = 0; i < e->kids.size(); ++i)
        if (occurs_bvar(e->kids[i], j + (static_cast<int>(i) == bi ? 1 : 0))) return true;
      return false;
    }
  }
}

namespace {
bool lc(const ExprPtr& e, int depth) {
  switch (e->kind) {
    case Kind::Tau:
    case Kind::FVar:
      return true;
    case Kind::BVar:
      return e->index < depth;
    default: {
      int bi = binding_child(e->kind);
      for (std::size_t i = 0; i < e->kids.size(); ++i)
        if (!lc(e->kids[i], depth + (static_cast<int>(i) == bi ? 1 : 0))) return false;
      return true;
    }
  }
}
}  // namespace

bool locally_closed(const ExprPtr& e) { return lc(e, 0); }

bool contains_subst(const ExprPtr& e) {
  if (e->kind == Kind::Subst) return true;
  for (const auto& k : e->kids)
    if (contains_subst(k)) return true;
  return false;
}

bool alpha_eq(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Tau:
      return true;
    case Kind::BVar:
      return a->index == b->index;
    case Kind::FVar:
      return a->name == b->name;
    default:
      break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!alpha_eq(a->kids[i], b->kids[i])) return false;
  return true;
}

Name fresh_name(const Name& hint, const std::set<Name>& avoid) {
  Name base = hint.empty() ? Name("x") : hint;
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    Name cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

Name NameSupply::fresh(const Name& hint) {
  // '%' never appears in parsed identifiers, so these cannot collide.
  return "%" + std::to_string(counter_++) + (hint.empty() ? Name() : "_" + hint);
}

bool Context::extend(const Name& x, ExprPtr type) {
  if (lookup_index(x)) return false;
  entries_.emplace_back(x, std::move(type));
  return true;
}

std::optional<ExprPtr> Context::lookup(const Name& x) const {
  for (const auto& [n, t] : entries_)
    if (n == x) return t;
  return std::nullopt;
}

std::optional<std::size_t> Context::lookup_index(const Name& x) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].first == x) return i;
  return std::nullopt;
}

Context Context::prefix(std::size_t n) const {
  Context out;
  for (std::size_t i = 0; i < n && i < entries_.size(); ++i) out.extend(entries_[i].first, entries_[i].second);
  return out;
}

std::set<Name> Context::names() const {
  std::set<Name> out;
  for (const auto& [n, t] : entries_) out.insert(n);
  return out;
}

ExprPtr Context::abstraction(ExprPtr a) const {
  ExprPtr cur = std::move(a);
  for (std::size_t i = entries_.size(); i-- > 0;) {
    const auto& [x, ty] = entries_[i];
    cur = abs(x, ty, close_over(cur, x));
  }
  return cur;
}

bool Context::operator==(const Context& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].first != other.entries_[i].first) return false;
    if (!alpha_eq(entries_[i].second, other.entries_[i].second)) return false;
  }
  return true;
}

}  // namespace dcheck
