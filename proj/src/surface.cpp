#include "dcheck/surface.hpp"

#include <fstream>
#include <sstream>

namespace dcheck {

SPtr snode(SNode::K k, Name name, std::vector<SPtr> kids, Span span) {
  auto n = std::make_shared<SNode>();
  n->k = k;
  n->name = std::move(name);
  n->kids = std::move(kids);
  n->span = span;
  return n;
}

const char* directive_kind_name(Directive::K k) {
  switch (k) {
    case Directive::K::Axiom: return "axiom";
    case Directive::K::Def: return "def";
    case Directive::K::Scheme: return "scheme";
    case Directive::K::Check: return "check";
    case Directive::K::Normalize: return "normalize";
    case Directive::K::AssertConverts: return "assert";
    case Directive::K::AssertInvalid: return "assert invalid";
  }
  return "?";
}

namespace {

enum class Tok {
  End, Ident,
  KwTau, KwInl, KwInr, KwCase, KwAxiom, KwDef, KwScheme, KwCheck, KwNormalize, KwAssert, KwInvalid,
  LBrack, RBrack, LParen, RParen, LBrace, RBrace, LAngle, RAngle,
  Colon, Assign, Bang, Comma, Semi, Plus, Arrow, Tilde, Dot1, Dot2, Period, EqEq,
};

struct Token {
  Tok t;
  std::string text;
  Span span;
  bool adjacent = false;  // no whitespace between this and the previous token
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_cont(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '\'' || c == '@';
}

std::vector<Token> lex(const std::string& s, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  bool sep = true;  // whitespace (or start) seen since last token
  auto err = [&](const std::string& msg) { throw ParseError(file + ": " + msg, {line, col}); };
  auto push = [&](Tok t, std::string text, int l, int c) {
    out.push_back({t, std::move(text), {l, c}, !sep});
    sep = false;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') { ++line; col = 1; ++i; sep = true; continue; }
    if (c == ' ' || c == '\t' || c == '\r') { ++i; ++col; sep = true; continue; }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
      while (i < s.size() && s[i] != '\n') ++i;
      sep = true;
      continue;
    }
    int l0 = line, c0 = col;
    // Unicode aliases.
    auto bytes = [&](const char* seq, std::size_t n) {
      return s.compare(i, n, seq) == 0;
    };
    if (bytes("\xCF\x84", 2)) { push(Tok::KwTau, "tau", l0, c0); i += 2; col += 1; continue; }       // tau
    if (bytes("\xC2\xAC", 2)) { push(Tok::Tilde, "~", l0, c0); i += 2; col += 1; continue; }          // not sign
    if (bytes("\xE2\x9F\xA8", 3)) { push(Tok::LAngle, "<", l0, c0); i += 3; col += 1; continue; }     // left angle
    if (bytes("\xE2\x9F\xA9", 3)) { push(Tok::RAngle, ">", l0, c0); i += 3; col += 1; continue; }     // right angle
    if (bytes("\xE2\x87\x92", 3)) { push(Tok::Arrow, "=>", l0, c0); i += 3; col += 1; continue; }     // double arrow
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_cont(s[j])) ++j;
      std::string w = s.substr(i, j - i);
      col += static_cast<int>(j - i);
      i = j;
      Tok t = Tok::Ident;
      if (w == "tau") t = Tok::KwTau;
      else if (w == "inl") t = Tok::KwInl;
      else if (w == "inr") t = Tok::KwInr;
      else if (w == "case") t = Tok::KwCase;
      else if (w == "axiom") t = Tok::KwAxiom;
      else if (w == "def") t = Tok::KwDef;
      else if (w == "scheme") t = Tok::KwScheme;
      else if (w == "check") t = Tok::KwCheck;
      else if (w == "normalize") t = Tok::KwNormalize;
      else if (w == "assert") t = Tok::KwAssert;
      else if (w == "invalid") t = Tok::KwInvalid;
      push(t, std::move(w), l0, c0);
      continue;
    }
    auto single = [&](Tok t) { push(t, std::string(1, c), l0, c0); ++i; ++col; };
    switch (c) {
      case '[': single(Tok::LBrack); break;
      case ']': single(Tok::RBrack); break;
      case '(': single(Tok::LParen); break;
      case ')': single(Tok::RParen); break;
      case '{': single(Tok::LBrace); break;
      case '}': single(Tok::RBrace); break;
      case '<': single(Tok::LAngle); break;
      case '>': single(Tok::RAngle); break;
      case '!': single(Tok::Bang); break;
      case ',': single(Tok::Comma); break;
      case ';': single(Tok::Semi); break;
      case '+': single(Tok::Plus); break;
      case '~': single(Tok::Tilde); break;
      case ':':
        if (i + 1 < s.size() && s[i + 1] == '=') { push(Tok::Assign, ":=", l0, c0); i += 2; col += 2; }
        else single(Tok::Colon);
        break;
      case '=':
        if (i + 1 < s.size() && s[i + 1] == '>') { push(Tok::Arrow, "=>", l0, c0); i += 2; col += 2; }
        else if (i + 1 < s.size() && s[i + 1] == '=') { push(Tok::EqEq, "==", l0, c0); i += 2; col += 2; }
        else err("stray '='");
        break;
      case '.':
        if (i + 1 < s.size() && (s[i + 1] == '1' || s[i + 1] == '2') &&
            (i + 2 >= s.size() || !ident_cont(s[i + 2]))) {
          push(s[i + 1] == '1' ? Tok::Dot1 : Tok::Dot2, s.substr(i, 2), l0, c0);
          i += 2;
          col += 2;
        } else single(Tok::Period);
        break;
      default:
        err(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", {line, col}, false});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file) : toks_(std::move(toks)), file_(std::move(file)) {}

  SPtr expr_only() {
    SPtr e = expr();
    expect(Tok::End, "end of input");
    return e;
  }

  Theory theory() {
    Theory th;
    th.file = file_;
    while (peek().t != Tok::End) th.directives.push_back(directive());
    return th;
  }

 private:
  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;

  const Token& peek(int k = 0) const {
    std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok t) const { return peek().t == t; }
  bool eat(Tok t) {
    if (!at(t)) return false;
    take();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) {
    const Token& t = peek();
    throw ParseError(file_ + ": expected " + msg + ", found '" + (t.t == Tok::End ? "<end>" : t.text) + "'",
                     t.span);
  }
  Token expect(Tok t, const std::string& what) {
    if (!at(t)) fail(what);
    return take();
  }

  Directive directive() {
    Directive d;
    d.span = peek().span;
    switch (peek().t) {
      case Tok::KwAxiom: {
        take();
        d.k = Directive::K::Axiom;
        d.name = expect(Tok::Ident, "axiom name").text;
        expect(Tok::Colon, "':'");
        d.e1 = expr();
        break;
      }
      case Tok::KwDef: {
        take();
        d.k = Directive::K::Def;
        d.name = expect(Tok::Ident, "definition name").text;
        expect(Tok::Assign, "':='");
        d.e1 = expr();
        break;
      }
      case Tok::KwScheme: {
        take();
        d.k = Directive::K::Scheme;
        d.name = expect(Tok::Ident, "scheme name").text;
        expect(Tok::LParen, "'('");
        d.params.push_back(expect(Tok::Ident, "parameter").text);
        while (eat(Tok::Comma)) d.params.push_back(expect(Tok::Ident, "parameter").text);
        expect(Tok::RParen, "')'");
        expect(Tok::Colon, "':'");
        d.e1 = expr();
        break;
      }
      case Tok::KwCheck: {
        take();
        d.k = Directive::K::Check;
        d.e1 = expr();
        expect(Tok::Colon, "':'");
        d.e2 = expr();
        break;
      }
      case Tok::KwNormalize: {
        take();
        d.k = Directive::K::Normalize;
        d.e1 = expr();
        break;
      }
      case Tok::KwAssert: {
        take();
        if (eat(Tok::KwInvalid)) {
          d.k = Directive::K::AssertInvalid;
          d.e1 = expr();
        } else {
          d.k = Directive::K::AssertConverts;
          d.e1 = expr();
          expect(Tok::EqEq, "'=='");
          d.e2 = expr();
        }
        break;
      }
      default:
        fail("a directive (axiom, def, scheme, check, normalize, assert)");
    }
    expect(Tok::Period, "'.' terminating the directive");
    return d;
  }

  SPtr expr() {
    Span sp = peek().span;
    if (eat(Tok::Tilde)) return snode(SNode::K::Neg, "", {expr_unary()}, sp);
    return postfix();
  }

  // Operand of '~': everything except trailing sum/product continuation.
  SPtr expr_unary() {
    Span sp = peek().span;
    if (eat(Tok::Tilde)) return snode(SNode::K::Neg, "", {expr_unary()}, sp);
    return postfix();
  }

  SPtr postfix() {
    SPtr e = primary();
    for (;;) {
      Span sp = peek().span;
      if (eat(Tok::Dot1)) e = snode(SNode::K::Proj1, "", {e}, sp);
      else if (eat(Tok::Dot2)) e = snode(SNode::K::Proj2, "", {e}, sp);
      else break;
    }
    return e;
  }

  SPtr primary() {
    const Token& t = peek();
    Span sp = t.span;
    switch (t.t) {
      case Tok::KwTau:
        take();
        return snode(SNode::K::Tau, "", {}, sp);
      case Tok::Ident: {
        Token id = take();
        if (at(Tok::LBrack) && peek().adjacent) {
          take();
          std::vector<SPtr> args{expr()};
          while (eat(Tok::Comma)) args.push_back(expr());
          expect(Tok::RBrack, "']' closing scheme arguments");
          return snode(SNode::K::SchemeInst, id.text, std::move(args), sp);
        }
        return snode(SNode::K::Ident, id.text, {}, sp);
      }
      case Tok::LParen: {
        take();
        std::vector<SPtr> parts{expr()};
        while (!at(Tok::RParen)) parts.push_back(expr());
        take();
        SPtr e = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i)
          e = snode(SNode::K::App, "", {e, parts[i]}, sp);
        return e;
      }
      case Tok::KwInl: {
        take();
        expect(Tok::LBrace, "'{'");
        SPtr v = expr();
        expect(Tok::Comma, "','");
        SPtr ty = expr();
        expect(Tok::RBrace, "'}'");
        return snode(SNode::K::InjL, "", {v, ty}, sp);
      }
      case Tok::KwInr: {
        take();
        expect(Tok::LBrace, "'{'");
        SPtr ty = expr();
        expect(Tok::Comma, "','");
        SPtr v = expr();
        expect(Tok::RBrace, "'}'");
        return snode(SNode::K::InjR, "", {ty, v}, sp);
      }
      case Tok::KwCase: {
        take();
        expect(Tok::LBrace, "'{'");
        SPtr l = expr();
        expect(Tok::Comma, "','");
        SPtr r = expr();
        expect(Tok::RBrace, "'}'");
        return snode(SNode::K::Case, "", {l, r}, sp);
      }
      case Tok::LAngle: {
        take();
        return pdef_tail(sp, Tok::RAngle, "'>' closing the protected definition");
      }
      case Tok::LBrack:
        take();
        return bracket(sp);
      default:
        fail("an expression");
    }
  }

  SPtr pdef_tail(Span sp, Tok closer, const std::string& closer_msg) {
    Name x = expect(Tok::Ident, "protected variable").text;
    expect(Tok::Assign, "':='");
    SPtr w = expr();
    expect(Tok::Comma, "','");
    SPtr body = expr();
    expect(Tok::Colon, "':'");
    SPtr tmpl = expr();
    expect(closer, closer_msg);
    return snode(SNode::K::PDef, x, {w, body, tmpl}, sp);
  }

  // After '[': protected definition, binder groups, arrow sugar, product, sum.
  SPtr bracket(Span sp) {
    if (at(Tok::Ident) && peek(1).t == Tok::Assign)
      return pdef_tail(sp, Tok::RBrack, "']' closing the protected definition");

    // Binder groups: x(,y)* (:|!) type (; more)* ] body
    std::size_t save = pos_;
    try {
      struct Binder { Name x; bool exist; SPtr ty; };
      std::vector<Binder> binders;
      for (;;) {
        std::vector<Name> names{expect(Tok::Ident, "binder").text};
        while (eat(Tok::Comma)) names.push_back(expect(Tok::Ident, "binder").text);
        bool exist;
        if (eat(Tok::Colon)) exist = false;
        else if (eat(Tok::Bang)) exist = true;
        else fail("':' or '!'");
        SPtr ty = expr();
        for (const auto& n : names) binders.push_back({n, exist, ty});
        if (eat(Tok::Semi)) continue;
        expect(Tok::RBrack, "']' closing the binder");
        break;
      }
      SPtr body = expr();
      for (std::size_t i = binders.size(); i-- > 0;)
        body = snode(binders[i].exist ? SNode::K::Exi : SNode::K::Abs, binders[i].x,
                     {binders[i].ty, body}, sp);
      return body;
    } catch (const ParseError&) {
      pos_ = save;  // not a binder form
    }

    SPtr e1 = expr();
    if (at(Tok::Semi) || at(Tok::Arrow)) {
      // [a1; ...; an => b] is n nested non-dependent abstractions.
      std::vector<SPtr> doms{e1};
      while (eat(Tok::Semi)) doms.push_back(expr());
      expect(Tok::Arrow, "'=>'");
      SPtr body = expr();
      expect(Tok::RBrack, "']' closing the arrow form");
      for (std::size_t i = doms.size(); i-- > 0;)
        body = snode(SNode::K::Abs, "", {doms[i], body}, sp);
      return body;
    }
    if (at(Tok::Comma)) {
      std::vector<SPtr> parts{e1};
      while (eat(Tok::Comma)) parts.push_back(expr());
      expect(Tok::RBrack, "']' closing the product");
      SPtr e = parts.back();
      for (std::size_t i = parts.size() - 1; i-- > 0;)
        e = snode(SNode::K::Prod, "", {parts[i], e}, sp);
      return e;
    }
    if (at(Tok::Plus)) {
      std::vector<SPtr> parts{e1};
      while (eat(Tok::Plus)) parts.push_back(expr());
      expect(Tok::RBrack, "']' closing the sum");
      SPtr e = parts.back();
      for (std::size_t i = parts.size() - 1; i-- > 0;)
        e = snode(SNode::K::Sum, "", {parts[i], e}, sp);
      return e;
    }
    fail("',', '+', ';', or '=>' in a bracket form");
  }
};

}  // namespace

SPtr parse_expr(const std::string& text, const std::string& what) {
  Parser p(lex(text, what), what);
  return p.expr_only();
}

Theory parse_theory(const std::string& text, const std::string& file) {
  Parser p(lex(text, file), file);
  return p.theory();
}

Theory parse_theory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, {});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_theory(buf.str(), path);
}

}  // namespace dcheck
