#include "lmu/syntax.hpp"

// Alpha-canonical form: bound lambda-names become "#x0", "#x1", ... and bound
// mu-names "#a0", "#a1", ... in traversal order. '#' cannot appear in parsed
// identifiers, so canonical names never collide with source names.

namespace lmu {

namespace {

struct Canonizer {
  std::map<std::string, std::string> lam, mu;
  int nextLam = 0;
  int nextMu = 0;

  TermPtr canon(const TermPtr& t) {
    switch (t->kind()) {
      case Term::Kind::Var: {
        auto it = lam.find(t->name());
        return it == lam.end() ? t : Term::var(it->second);
      }
      case Term::Kind::Lam: {
        std::string fresh = "#x" + std::to_string(nextLam++);
        auto saved = replace(lam, t->name(), fresh);
        TermPtr body = canon(t->body());
        restore(lam, t->name(), saved);
        return Term::lam(fresh, t->ann(), body);
      }
      case Term::Kind::App: {
        TermPtr h = canon(t->head());
        return Term::app(h, canon(t->arg()));
      }
      case Term::Kind::Pair: {
        TermPtr f = canon(t->fst());
        return Term::pair(f, canon(t->snd()));
      }
      case Term::Kind::Inl:
        return Term::inl(t->ann(), canon(t->body()));
      case Term::Kind::Inr:
        return Term::inr(t->ann(), canon(t->body()));
      case Term::Kind::Mu: {
        std::string fresh = "#a" + std::to_string(nextMu++);
        auto saved = replace(mu, t->name(), fresh);
        TermPtr body = canon(t->body());
        restore(mu, t->name(), saved);
        return Term::mu(fresh, t->ann(), body);
      }
      case Term::Kind::Named: {
        auto it = mu.find(t->name());
        const std::string& n = it == mu.end() ? t->name() : it->second;
        return Term::named(n, canon(t->body()));
      }
    }
    return t;
  }

  ETermPtr canon(const ETermPtr& e) {
    switch (e->kind()) {
      case ETerm::Kind::Arg:
        return ETerm::arg(canon(e->term()));
      case ETerm::Kind::Proj1:
      case ETerm::Kind::Proj2:
        return e;
      case ETerm::Kind::Case: {
        std::string fx = "#x" + std::to_string(nextLam++);
        auto savedL = replace(lam, e->leftName(), fx);
        TermPtr l = canon(e->left());
        restore(lam, e->leftName(), savedL);
        std::string fy = "#x" + std::to_string(nextLam++);
        auto savedR = replace(lam, e->rightName(), fy);
        TermPtr r = canon(e->right());
        restore(lam, e->rightName(), savedR);
        return ETerm::caseOf(e->ann(), fx, l, fy, r);
      }
    }
    return e;
  }

  static std::pair<bool, std::string> replace(std::map<std::string, std::string>& m,
                                              const std::string& k,
                                              const std::string& v) {
    auto it = m.find(k);
    std::pair<bool, std::string> saved{false, ""};
    if (it != m.end()) saved = {true, it->second};
    m[k] = v;
    return saved;
  }
  static void restore(std::map<std::string, std::string>& m, const std::string& k,
                      const std::pair<bool, std::string>& saved) {
    if (saved.first)
      m[k] = saved.second;
    else
      m.erase(k);
  }
};

}  // namespace

TermPtr alphaCanonical(const TermPtr& t) {
  Canonizer c;
  return c.canon(t);
}

ETermPtr alphaCanonical(const ETermPtr& e) {
  Canonizer c;
  return c.canon(e);
}

bool alphaEq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  return termEq(alphaCanonical(a), alphaCanonical(b));
}

bool alphaEq(const ETermPtr& a, const ETermPtr& b) {
  if (a.get() == b.get()) return true;
  return etermEq(alphaCanonical(a), alphaCanonical(b));
}

bool alphaEqSeq(const Seq& a, const Seq& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!alphaEq(a[i], b[i])) return false;
  return true;
}

}  // namespace lmu
