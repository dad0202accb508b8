#include <cctype>

#include "lmu/syntax.hpp"

namespace lmu {

namespace {

enum class Tok {
  Ident, Lambda, Mu, Inl, Inr, Case, P1, P2, Bot,
  Arrow, OrOp, AndOp,
  LParen, RParen, LBrack, RBrack, LBrace, RBrace,
  Lt, Gt, Comma, Colon, Dot, Pipe, End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* tokName(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Lambda: return "'\\'";
    case Tok::Mu: return "'mu'";
    case Tok::Inl: return "'inl'";
    case Tok::Inr: return "'inr'";
    case Tok::Case: return "'case'";
    case Tok::P1: return "'p1'";
    case Tok::P2: return "'p2'";
    case Tok::Bot: return "'bot'";
    case Tok::Arrow: return "'->'";
    case Tok::OrOp: return "'\\/'";
    case Tok::AndOp: return "'/\\'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Pipe: return "'|'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i < src.size() && src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    auto push = [&](Tok k, std::size_t n, std::string text = "") {
      out.push_back({k, std::move(text), tl, tc});
      advance(n);
    };
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
              src[j] == '\''))
        ++j;
      std::string word(src.substr(i, j - i));
      Tok k = Tok::Ident;
      if (word == "bot") k = Tok::Bot;
      else if (word == "mu") k = Tok::Mu;
      else if (word == "inl") k = Tok::Inl;
      else if (word == "inr") k = Tok::Inr;
      else if (word == "case") k = Tok::Case;
      else if (word == "p1") k = Tok::P1;
      else if (word == "p2") k = Tok::P2;
      push(k, j - i, std::move(word));
      continue;
    }
    switch (c) {
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') { push(Tok::Arrow, 2); continue; }
        throw SyntaxError("unexpected '-'", line, col);
      case '\\':
        if (i + 1 < src.size() && src[i + 1] == '/') { push(Tok::OrOp, 2); continue; }
        push(Tok::Lambda, 1);
        continue;
      case '/':
        if (i + 1 < src.size() && src[i + 1] == '\\') { push(Tok::AndOp, 2); continue; }
        throw SyntaxError("unexpected '/'", line, col);
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '[': push(Tok::LBrack, 1); continue;
      case ']': push(Tok::RBrack, 1); continue;
      case '{': push(Tok::LBrace, 1); continue;
      case '}': push(Tok::RBrace, 1); continue;
      case '<': push(Tok::Lt, 1); continue;
      case '>': push(Tok::Gt, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case ':': push(Tok::Colon, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case '|': push(Tok::Pipe, 1); continue;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  Token next() { return toks[pos++]; }

  Token expect(Tok k) {
    if (peek().kind != k)
      throw SyntaxError(std::string("expected ") + tokName(k) + ", found " +
                            tokName(peek().kind),
                        peek().line, peek().col);
    return next();
  }

  [[noreturn]] void fail(const std::string& what) {
    throw SyntaxError("expected " + what + ", found " + tokName(peek().kind),
                      peek().line, peek().col);
  }

  // Types

  TypePtr type() {
    TypePtr l = orType();
    if (peek().kind == Tok::Arrow) {
      next();
      return Type::arrow(l, type());
    }
    return l;
  }

  TypePtr orType() {
    TypePtr l = andType();
    while (peek().kind == Tok::OrOp) {
      next();
      l = Type::disj(l, andType());
    }
    return l;
  }

  TypePtr andType() {
    TypePtr l = atomType();
    while (peek().kind == Tok::AndOp) {
      next();
      l = Type::conj(l, atomType());
    }
    return l;
  }

  TypePtr atomType() {
    switch (peek().kind) {
      case Tok::Ident: return Type::prop(next().text);
      case Tok::Bot: next(); return Type::bottom();
      case Tok::LParen: {
        next();
        TypePtr t = type();
        expect(Tok::RParen);
        return t;
      }
      default: fail("a type");
    }
  }

  // Terms

  bool startsEArg() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::Lambda:
      case Tok::Lt:
      case Tok::Inl:
      case Tok::Inr:
      case Tok::Mu:
      case Tok::LBrack:
      case Tok::LParen:
      case Tok::P1:
      case Tok::P2:
      case Tok::Case:
        return true;
      default:
        return false;
    }
  }

  TermPtr term() {
    TermPtr h = head();
    while (startsEArg()) h = Term::app(h, earg());
    return h;
  }

  TermPtr head() {
    switch (peek().kind) {
      case Tok::Ident:
        return Term::var(next().text);
      case Tok::Lambda: {
        next();
        std::string x = expect(Tok::Ident).text;
        expect(Tok::Colon);
        TypePtr a = type();
        expect(Tok::Dot);
        return Term::lam(std::move(x), a, term());
      }
      case Tok::Lt: {
        next();
        TermPtr f = term();
        expect(Tok::Comma);
        TermPtr s = term();
        expect(Tok::Gt);
        return Term::pair(f, s);
      }
      case Tok::Inl: {
        next();
        expect(Tok::LBrack);
        TypePtr a = type();
        expect(Tok::RBrack);
        return Term::inl(a, head());
      }
      case Tok::Inr: {
        next();
        expect(Tok::LBrack);
        TypePtr a = type();
        expect(Tok::RBrack);
        return Term::inr(a, head());
      }
      case Tok::Mu: {
        next();
        std::string a = expect(Tok::Ident).text;
        expect(Tok::Colon);
        TypePtr ann = type();
        expect(Tok::Dot);
        return Term::mu(std::move(a), ann, term());
      }
      case Tok::LBrack: {
        next();
        std::string a = expect(Tok::Ident).text;
        expect(Tok::RBrack);
        return Term::named(std::move(a), head());
      }
      case Tok::LParen: {
        next();
        TermPtr t = term();
        expect(Tok::RParen);
        return t;
      }
      default:
        fail("a term");
    }
  }

  ETermPtr earg() {
    switch (peek().kind) {
      case Tok::P1: next(); return ETerm::proj1();
      case Tok::P2: next(); return ETerm::proj2();
      case Tok::Case: {
        next();
        expect(Tok::LBrack);
        TypePtr res = type();
        expect(Tok::RBrack);
        expect(Tok::LBrace);
        std::string x = expect(Tok::Ident).text;
        expect(Tok::Dot);
        TermPtr l = term();
        expect(Tok::Pipe);
        std::string y = expect(Tok::Ident).text;
        expect(Tok::Dot);
        TermPtr r = term();
        expect(Tok::RBrace);
        return ETerm::caseOf(res, std::move(x), l, std::move(y), r);
      }
      default:
        return ETerm::arg(head());
    }
  }
};

// Binders that shadow an enclosing binder of the same namespace get primed;
// free occurrences are untouched.
struct ShadowFreshener {
  std::set<std::string> lamScope, muScope;

  TermPtr run(const TermPtr& t) {
    switch (t->kind()) {
      case Term::Kind::Var:
        return t;
      case Term::Kind::Lam: {
        auto [name, body] = enterLam(t->name(), t->body());
        lamScope.insert(name);
        TermPtr b = run(body);
        lamScope.erase(name);
        return Term::lam(name, t->ann(), b);
      }
      case Term::Kind::App: {
        TermPtr h = run(t->head());
        return Term::app(h, run(t->arg()));
      }
      case Term::Kind::Pair: {
        TermPtr f = run(t->fst());
        return Term::pair(f, run(t->snd()));
      }
      case Term::Kind::Inl:
        return Term::inl(t->ann(), run(t->body()));
      case Term::Kind::Inr:
        return Term::inr(t->ann(), run(t->body()));
      case Term::Kind::Mu: {
        std::string name = t->name();
        TermPtr body = t->body();
        if (muScope.count(name)) {
          std::set<std::string> avoid = muScope;
          auto names = allMuNames(body);
          avoid.insert(names.begin(), names.end());
          name = freshName(name, avoid);
          body = renameMuVar(body, t->name(), name);
        }
        muScope.insert(name);
        TermPtr b = run(body);
        muScope.erase(name);
        return Term::mu(name, t->ann(), b);
      }
      case Term::Kind::Named:
        return Term::named(t->name(), run(t->body()));
    }
    return t;
  }

  ETermPtr run(const ETermPtr& e) {
    switch (e->kind()) {
      case ETerm::Kind::Arg:
        return ETerm::arg(run(e->term()));
      case ETerm::Kind::Proj1:
      case ETerm::Kind::Proj2:
        return e;
      case ETerm::Kind::Case: {
        auto [ln, lb] = enterLam(e->leftName(), e->left());
        lamScope.insert(ln);
        TermPtr l = run(lb);
        lamScope.erase(ln);
        auto [rn, rb] = enterLam(e->rightName(), e->right());
        lamScope.insert(rn);
        TermPtr r = run(rb);
        lamScope.erase(rn);
        return ETerm::caseOf(e->ann(), ln, l, rn, r);
      }
    }
    return e;
  }

private:
  std::pair<std::string, TermPtr> enterLam(const std::string& y, TermPtr body) {
    if (!lamScope.count(y)) return {y, body};
    std::set<std::string> avoid = lamScope;
    auto names = allLamNames(body);
    avoid.insert(names.begin(), names.end());
    std::string fresh = freshName(y, avoid);
    return {fresh, subst(body, y, Term::var(fresh))};
  }
};

void checkStrictMu(const TermPtr& t, std::set<std::string>& scope);

void checkStrictMu(const ETermPtr& e, std::set<std::string>& scope) {
  switch (e->kind()) {
    case ETerm::Kind::Arg:
      checkStrictMu(e->term(), scope);
      break;
    case ETerm::Kind::Proj1:
    case ETerm::Kind::Proj2:
      break;
    case ETerm::Kind::Case:
      checkStrictMu(e->left(), scope);
      checkStrictMu(e->right(), scope);
      break;
  }
}

void checkStrictMu(const TermPtr& t, std::set<std::string>& scope) {
  switch (t->kind()) {
    case Term::Kind::Var:
      break;
    case Term::Kind::Lam:
    case Term::Kind::Inl:
    case Term::Kind::Inr:
      checkStrictMu(t->body(), scope);
      break;
    case Term::Kind::App:
      checkStrictMu(t->head(), scope);
      checkStrictMu(t->arg(), scope);
      break;
    case Term::Kind::Pair:
      checkStrictMu(t->fst(), scope);
      checkStrictMu(t->snd(), scope);
      break;
    case Term::Kind::Mu: {
      bool had = scope.count(t->name()) > 0;
      scope.insert(t->name());
      checkStrictMu(t->body(), scope);
      if (!had) scope.erase(t->name());
      break;
    }
    case Term::Kind::Named:
      if (!scope.count(t->name())) throw UnboundMuError(t->name());
      checkStrictMu(t->body(), scope);
      break;
  }
}

}  // namespace

TypePtr parseType(std::string_view src) {
  Parser p{lex(src)};
  TypePtr t = p.type();
  if (p.peek().kind != Tok::End)
    throw SyntaxError(std::string("trailing input after type: ") +
                          tokName(p.peek().kind),
                      p.peek().line, p.peek().col);
  return t;
}

TermPtr parseTerm(std::string_view src, bool strictMu) {
  Parser p{lex(src)};
  TermPtr t = p.term();
  if (p.peek().kind != Tok::End)
    throw SyntaxError(std::string("trailing input after term: ") +
                          tokName(p.peek().kind),
                      p.peek().line, p.peek().col);
  if (strictMu) {
    std::set<std::string> scope;
    checkStrictMu(t, scope);
  }
  ShadowFreshener f;
  return f.run(t);
}

}  // namespace lmu
