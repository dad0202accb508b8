#include "lmu/typing.hpp"

namespace lmu {

std::string pathString(const std::vector<int>& path) {
  if (path.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

namespace {

struct Scope {
  std::map<std::string, TypePtr>& map;
  std::string name;
  TypePtr saved;
  Scope(std::map<std::string, TypePtr>& m, const std::string& n, TypePtr ty)
      : map(m), name(n) {
    auto it = map.find(n);
    if (it != map.end()) saved = it->second;
    map[n] = std::move(ty);
  }
  ~Scope() {
    if (saved)
      map[name] = saved;
    else
      map.erase(name);
  }
};

struct Inferencer {
  std::map<std::string, TypePtr> gamma, delta;
  std::vector<int> path;

  TypePtr go(const TermPtr& t) {
    switch (t->kind()) {
      case Term::Kind::Var: {
        auto it = gamma.find(t->name());
        if (it == gamma.end()) throw UnboundVariableError(path, t->name(), false);
        return it->second;
      }
      case Term::Kind::Lam: {
        Scope s(gamma, t->name(), t->ann());
        TypePtr body = child(t->body(), 0);
        return Type::arrow(t->ann(), body);
      }
      case Term::Kind::Pair: {
        TypePtr a = child(t->fst(), 0);
        TypePtr b = child(t->snd(), 1);
        return Type::conj(a, b);
      }
      case Term::Kind::Inl:
        return Type::disj(child(t->body(), 0), t->ann());
      case Term::Kind::Inr:
        return Type::disj(t->ann(), child(t->body(), 0));
      case Term::Kind::Mu: {
        Scope s(delta, t->name(), t->ann());
        TypePtr body = child(t->body(), 0);
        if (body->kind() != Type::Kind::Bottom)
          throw TypeError("abs_e", path,
                          "mu body has type " + printType(body) + ", expected bot");
        return t->ann();
      }
      case Term::Kind::Named: {
        auto it = delta.find(t->name());
        if (it == delta.end()) throw UnboundVariableError(path, t->name(), true);
        TypePtr body = child(t->body(), 0);
        if (!typeEq(body, it->second))
          throw AnnotationMismatchError(
              "abs_i", path,
              "[" + t->name() + "] expects " + printType(it->second) + ", body has " +
                  printType(body));
        return Type::bottom();
      }
      case Term::Kind::App:
        return goApp(t);
    }
    throw TypeError("?", path, "unreachable term kind");
  }

  TypePtr goApp(const TermPtr& t) {
    TypePtr head = child(t->head(), 0);
    const ETermPtr& e = t->arg();
    switch (e->kind()) {
      case ETerm::Kind::Arg: {
        if (head->kind() != Type::Kind::Arrow)
          throw TypeError("->e", path,
                          "applied term has type " + printType(head) +
                              ", expected an arrow");
        TypePtr arg = child(e->term(), 1);
        if (!typeEq(arg, head->left()))
          throw TypeError("->e", path,
                          "argument has type " + printType(arg) + ", expected " +
                              printType(head->left()));
        return head->right();
      }
      case ETerm::Kind::Proj1:
      case ETerm::Kind::Proj2: {
        bool first = e->kind() == ETerm::Kind::Proj1;
        if (head->kind() != Type::Kind::And)
          throw TypeError(first ? "/\\e1" : "/\\e2", path,
                          "projected term has type " + printType(head) +
                              ", expected a conjunction");
        return first ? head->left() : head->right();
      }
      case ETerm::Kind::Case: {
        if (head->kind() != Type::Kind::Or)
          throw TypeError("\\/e", path,
                          "case scrutinee has type " + printType(head) +
                              ", expected a disjunction");
        {
          Scope s(gamma, e->leftName(), head->left());
          TypePtr l = child(e->left(), 1);
          if (!typeEq(l, e->ann()))
            throw AnnotationMismatchError(
                "\\/e", path,
                "left branch has type " + printType(l) + ", case annotation is " +
                    printType(e->ann()));
        }
        {
          Scope s(gamma, e->rightName(), head->right());
          TypePtr r = child(e->right(), 2);
          if (!typeEq(r, e->ann()))
            throw AnnotationMismatchError(
                "\\/e", path,
                "right branch has type " + printType(r) + ", case annotation is " +
                    printType(e->ann()));
        }
        return e->ann();
      }
    }
    throw TypeError("?", path, "unreachable E-term kind");
  }

  TypePtr child(const TermPtr& t, int idx) {
    path.push_back(idx);
    TypePtr ty = go(t);
    path.pop_back();
    return ty;
  }
};

}  // namespace

TypePtr infer(const Contexts& ctx, const TermPtr& t) {
  Inferencer inf{ctx.gamma, ctx.delta, {}};
  return inf.go(t);
}

Judgement check(const Contexts& ctx, const TermPtr& t, const TypePtr& type) {
  TypePtr actual = infer(ctx, t);
  if (!typeEq(actual, type)) throw MismatchError({}, type, actual);
  return Judgement(ctx, t, type);
}

TypePtr elimType(const TypePtr& type, const ETermPtr& e) {
  switch (e->kind()) {
    case ETerm::Kind::Arg:
      if (type->kind() == Type::Kind::Arrow) return type->right();
      throw ElimMismatchError("cannot apply a term of type " + printType(type));
    case ETerm::Kind::Proj1:
      if (type->kind() == Type::Kind::And) return type->left();
      throw ElimMismatchError("cannot project p1 from " + printType(type));
    case ETerm::Kind::Proj2:
      if (type->kind() == Type::Kind::And) return type->right();
      throw ElimMismatchError("cannot project p2 from " + printType(type));
    case ETerm::Kind::Case:
      if (type->kind() == Type::Kind::Or) return e->ann();
      throw ElimMismatchError("cannot case on " + printType(type));
  }
  throw ElimMismatchError("unreachable E-term kind");
}

std::map<std::string, TypePtr> parseContextDecls(const std::string& src) {
  std::map<std::string, TypePtr> out;
  std::size_t start = 0;
  auto trim = [](std::string s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return std::string();
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  };
  std::string whole = trim(src);
  if (whole.empty()) return out;
  while (start <= whole.size()) {
    std::size_t comma = whole.find(',', start);
    std::string item = comma == std::string::npos ? whole.substr(start)
                                                  : whole.substr(start, comma - start);
    std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw SyntaxError("context entry '" + trim(item) + "' has no ':'", 1,
                        static_cast<int>(start + 1));
    std::string name = trim(item.substr(0, colon));
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
      throw SyntaxError("bad context variable name '" + name + "'", 1,
                        static_cast<int>(start + 1));
    out[name] = parseType(item.substr(colon + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace lmu
