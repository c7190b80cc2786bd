#include "dcheck/print.hpp"

#include <sstream>

namespace dcheck {

namespace {

struct Printer {
  std::vector<Name> binders;  // innermost last

  Name lookup(int i) const {
    int pos = static_cast<int>(binders.size()) - 1 - i;
    if (pos < 0) return "#" + std::to_string(i);  // dangling (debug only)
    return binders[pos];
  }

  Name pick(const Name& hint, const ExprPtr& body) {
    std::set<Name> avoid = free_vars(body);
    for (const auto& b : binders) avoid.insert(b);
    return fresh_name(hint, avoid);
  }

  // Parenthesize under a postfix projection when the printed form would
  // otherwise swallow the projection into a trailing subexpression.
  std::string proj_subject(const ExprPtr& e) {
    switch (e->kind) {
      case Kind::Neg:
      case Kind::Abs:
      case Kind::Exi:
        return "(" + p(e) + ")";
      default:
        return p(e);
    }
  }

  std::string p(const ExprPtr& e) {
    switch (e->kind) {
      case Kind::Tau:
        return "tau";
      case Kind::BVar:
        return lookup(e->index);
      case Kind::FVar:
        return e->name;
      case Kind::Abs: {
        if (!occurs_bvar(e->kids[1], 0)) {
          binders.push_back("");  // placeholder, never referenced
          std::string body = p(e->kids[1]);
          binders.pop_back();
          return "[" + p(e->kids[0]) + " => " + body + "]";
        }
        Name x = pick(e->name, e->kids[1]);
        std::string dom = p(e->kids[0]);
        binders.push_back(x);
        std::string body = p(e->kids[1]);
        binders.pop_back();
        return "[" + x + ":" + dom + "]" + body;
      }
      case Kind::Exi: {
        Name x = pick(e->name, e->kids[1]);
        std::string dom = p(e->kids[0]);
        binders.push_back(x);
        std::string body = p(e->kids[1]);
        binders.pop_back();
        return "[" + x + "!" + dom + "]" + body;
      }
      case Kind::App: {
        // Flatten a left-nested application spine.
        std::vector<const ExprPtr*> spine;
        const ExprPtr* cur = &e;
        while ((*cur)->kind == Kind::App) {
          spine.push_back(&(*cur)->kids[1]);
          cur = &(*cur)->kids[0];
        }
        std::string out = "(" + p(*cur);
        for (std::size_t i = spine.size(); i-- > 0;) out += " " + p(*spine[i]);
        return out + ")";
      }
      case Kind::Def: {
        Name x = pick(e->name, e->kids[2]);
        std::string w = p(e->kids[0]);
        std::string pr = p(e->kids[1]);
        binders.push_back(x);
        std::string t = p(e->kids[2]);
        binders.pop_back();
        return "[" + x + " := " + w + ", " + pr + " : " + t + "]";
      }
      case Kind::Proj1:
        return proj_subject(e->kids[0]) + ".1";
      case Kind::Proj2:
        return proj_subject(e->kids[0]) + ".2";
      case Kind::Prod:
        return "[" + p(e->kids[0]) + ", " + p(e->kids[1]) + "]";
      case Kind::Sum:
        return "[" + p(e->kids[0]) + " + " + p(e->kids[1]) + "]";
      case Kind::InjL:
        return "inl{" + p(e->kids[0]) + ", " + p(e->kids[1]) + "}";
      case Kind::InjR:
        return "inr{" + p(e->kids[0]) + ", " + p(e->kids[1]) + "}";
      case Kind::Case:
        return "case{" + p(e->kids[0]) + ", " + p(e->kids[1]) + "}";
      case Kind::Neg:
        return "~" + p(e->kids[0]);
      case Kind::Subst: {  // internal only; not surface syntax
        Name x = pick(e->name, e->kids[1]);
        std::string d = p(e->kids[0]);
        binders.push_back(x);
        std::string body = p(e->kids[1]);
        binders.pop_back();
        return "[" + x + " := " + d + "]" + body;
      }
    }
    return "?";
  }
};

std::string canon(const ExprPtr& e, int depth) {
  switch (e->kind) {
    case Kind::Tau:
      return "tau";
    case Kind::BVar:
      return "$" + std::to_string(depth - 1 - e->index);
    case Kind::FVar:
      return e->name;
    default: {
      static const char* tags[] = {"",      "",      "",      "abs",  "app",  "exi",
                                   "def",   "p1",    "p2",    "prod", "sum",  "injl",
                                   "injr",  "case",  "neg",   "sub"};
      std::string out = tags[static_cast<int>(e->kind)];
      out += "(";
      int bi = binding_child(e->kind);
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (i) out += ",";
        out += canon(e->kids[i], depth + (static_cast<int>(i) == bi ? 1 : 0));
      }
      return out + ")";
    }
  }
}

}  // namespace

std::string print(const ExprPtr& e) {
  Printer pr;
  return pr.p(e);
}

std::string canonical_print(const ExprPtr& e) { return canon(e, 0); }

std::string print_context(const Context& ctx) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) out << ", ";
    out << ctx.entry(i).first << ":" << print(ctx.entry(i).second);
  }
  return out.str();
}

}  // namespace dcheck
