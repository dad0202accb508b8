#include "lmu/syntax.hpp"

namespace lmu {

namespace {

void collectAll(const TermPtr& t, bool muNamespace, std::set<std::string>& out) {
  auto names = muNamespace ? allMuNames(t) : allLamNames(t);
  out.insert(names.begin(), names.end());
}

// Plain renaming of a free mu-name; `nw` must not occur in t at all.
TermPtr renameMu(const TermPtr& t, const std::string& old, const std::string& nw);

ETermPtr renameMu(const ETermPtr& e, const std::string& old, const std::string& nw) {
  switch (e->kind()) {
    case ETerm::Kind::Arg:
      return ETerm::arg(renameMu(e->term(), old, nw));
    case ETerm::Kind::Proj1:
    case ETerm::Kind::Proj2:
      return e;
    case ETerm::Kind::Case: {
      TermPtr l = renameMu(e->left(), old, nw);
      return ETerm::caseOf(e->ann(), e->leftName(), l, e->rightName(),
                           renameMu(e->right(), old, nw));
    }
  }
  return e;
}

TermPtr renameMu(const TermPtr& t, const std::string& old, const std::string& nw) {
  switch (t->kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::Lam:
      return Term::lam(t->name(), t->ann(), renameMu(t->body(), old, nw));
    case Term::Kind::App: {
      TermPtr h = renameMu(t->head(), old, nw);
      return Term::app(h, renameMu(t->arg(), old, nw));
    }
    case Term::Kind::Pair: {
      TermPtr f = renameMu(t->fst(), old, nw);
      return Term::pair(f, renameMu(t->snd(), old, nw));
    }
    case Term::Kind::Inl:
      return Term::inl(t->ann(), renameMu(t->body(), old, nw));
    case Term::Kind::Inr:
      return Term::inr(t->ann(), renameMu(t->body(), old, nw));
    case Term::Kind::Mu:
      if (t->name() == old) return t;  // shadowed below
      return Term::mu(t->name(), t->ann(), renameMu(t->body(), old, nw));
    case Term::Kind::Named:
      return Term::named(t->name() == old ? nw : t->name(),
                         renameMu(t->body(), old, nw));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Parallel capture-avoiding substitution of lambda-variables. The single-
// variable subst is the one-entry special case.

struct LamSubst {
  std::map<std::string, TermPtr> sub;
  std::set<std::string> freeLamOfRange;  // over all replacement terms
  std::set<std::string> freeMuOfRange;

  explicit LamSubst(std::map<std::string, TermPtr> s) : sub(std::move(s)) {
    for (const auto& [k, v] : sub) {
      (void)k;
      auto fl = freeLamVars(v);
      freeLamOfRange.insert(fl.begin(), fl.end());
      auto fm = freeMuVars(v);
      freeMuOfRange.insert(fm.begin(), fm.end());
    }
  }

  bool relevant(const TermPtr& t) const {
    auto fv = freeLamVars(t);
    for (const auto& [k, v] : sub) {
      (void)v;
      if (fv.count(k)) return true;
    }
    return false;
  }

  TermPtr apply(const TermPtr& t) {
    if (sub.empty() || !relevant(t)) return t;
    switch (t->kind()) {
      case Term::Kind::Var: {
        auto it = sub.find(t->name());
        return it == sub.end() ? t : it->second;
      }
      case Term::Kind::Lam: {
        auto [name, body] = applyUnderLam(t->name(), t->body());
        return Term::lam(name, t->ann(), body);
      }
      case Term::Kind::App: {
        TermPtr h = apply(t->head());
        return Term::app(h, apply(t->arg()));
      }
      case Term::Kind::Pair: {
        TermPtr f = apply(t->fst());
        return Term::pair(f, apply(t->snd()));
      }
      case Term::Kind::Inl:
        return Term::inl(t->ann(), apply(t->body()));
      case Term::Kind::Inr:
        return Term::inr(t->ann(), apply(t->body()));
      case Term::Kind::Mu: {
        std::string name = t->name();
        TermPtr body = t->body();
        if (freeMuOfRange.count(name) && relevant(body)) {
          std::set<std::string> avoid = freeMuOfRange;
          collectAll(body, true, avoid);
          name = freshName(name, avoid);
          body = renameMu(body, t->name(), name);
        }
        return Term::mu(name, t->ann(), apply(body));
      }
      case Term::Kind::Named:
        return Term::named(t->name(), apply(t->body()));
    }
    return t;
  }

  ETermPtr apply(const ETermPtr& e) {
    switch (e->kind()) {
      case ETerm::Kind::Arg:
        return ETerm::arg(apply(e->term()));
      case ETerm::Kind::Proj1:
      case ETerm::Kind::Proj2:
        return e;
      case ETerm::Kind::Case: {
        auto [ln, l] = applyUnderLam(e->leftName(), e->left());
        auto [rn, r] = applyUnderLam(e->rightName(), e->right());
        return ETerm::caseOf(e->ann(), ln, l, rn, r);
      }
    }
    return e;
  }

private:
  // A binder over y suspends sub[y] for its branch; a binder that would
  // capture a free variable of the range is freshened first.
  std::pair<std::string, TermPtr> applyUnderLam(const std::string& y, TermPtr body) {
    auto it = sub.find(y);
    TermPtr shadowed;
    if (it != sub.end()) {
      shadowed = it->second;
      sub.erase(it);
    }
    std::string name = y;
    if (!sub.empty() && freeLamOfRange.count(y) && relevant(body)) {
      std::set<std::string> avoid = freeLamOfRange;
      collectAll(body, false, avoid);
      for (const auto& [k, v] : sub) {
        (void)v;
        avoid.insert(k);
      }
      name = freshName(y, avoid);
      body = subst(body, y, Term::var(name));
    }
    TermPtr out = apply(body);
    if (shadowed) sub.emplace(y, shadowed);
    return {name, out};
  }
};

}  // namespace

TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& v) {
  LamSubst s({{x, v}});
  return s.apply(t);
}

ETermPtr subst(const ETermPtr& e, const std::string& x, const TermPtr& v) {
  LamSubst s({{x, v}});
  return s.apply(e);
}

Seq subst(const Seq& w, const std::string& x, const TermPtr& v) {
  Seq out;
  out.reserve(w.size());
  for (const auto& e : w) out.push_back(subst(e, x, v));
  return out;
}

TermPtr substPar(const TermPtr& t, const std::map<std::string, TermPtr>& sub) {
  LamSubst s(sub);
  return s.apply(t);
}

// ---------------------------------------------------------------------------
// Structural substitution

namespace {

struct MuSubst {
  std::string target;
  Seq seq;  // inserted spine; singleton for the one-E-term form
  std::set<std::string> freeLamOfSeq;
  std::set<std::string> freeMuOfSeq;

  MuSubst(std::string a, Seq w) : target(std::move(a)), seq(std::move(w)) {
    for (const auto& e : seq) {
      auto fl = freeLamVars(e);
      freeLamOfSeq.insert(fl.begin(), fl.end());
      auto fm = freeMuVars(e);
      freeMuOfSeq.insert(fm.begin(), fm.end());
    }
  }

  TermPtr apply(const TermPtr& t) {
    if (seq.empty() || !freeMuVars(t).count(target)) return t;
    switch (t->kind()) {
      case Term::Kind::Var:
        return t;
      case Term::Kind::Lam: {
        auto [name, body] = guardLam(t->name(), t->body());
        return Term::lam(name, t->ann(), apply(body));
      }
      case Term::Kind::App: {
        TermPtr h = apply(t->head());
        return Term::app(h, apply(t->arg()));
      }
      case Term::Kind::Pair: {
        TermPtr f = apply(t->fst());
        return Term::pair(f, apply(t->snd()));
      }
      case Term::Kind::Inl:
        return Term::inl(t->ann(), apply(t->body()));
      case Term::Kind::Inr:
        return Term::inr(t->ann(), apply(t->body()));
      case Term::Kind::Mu: {
        // target cannot be shadowed here: the free-occurrence guard above
        // already returned t in that case
        auto [name, body] = guardMu(t->name(), t->body());
        return Term::mu(name, t->ann(), apply(body));
      }
      case Term::Kind::Named: {
        TermPtr inner = apply(t->body());
        if (t->name() == target) return Term::named(target, applySeq(inner, seq));
        return Term::named(t->name(), inner);
      }
    }
    return t;
  }

  ETermPtr apply(const ETermPtr& e) {
    switch (e->kind()) {
      case ETerm::Kind::Arg:
        return ETerm::arg(apply(e->term()));
      case ETerm::Kind::Proj1:
      case ETerm::Kind::Proj2:
        return e;
      case ETerm::Kind::Case: {
        auto [ln, lb] = guardLam(e->leftName(), e->left());
        TermPtr l = apply(lb);
        auto [rn, rb] = guardLam(e->rightName(), e->right());
        return ETerm::caseOf(e->ann(), ln, l, rn, apply(rb));
      }
    }
    return e;
  }

private:
  std::pair<std::string, TermPtr> guardLam(const std::string& y, TermPtr body) {
    std::string name = y;
    if (freeLamOfSeq.count(y) && freeMuVars(body).count(target)) {
      std::set<std::string> avoid = freeLamOfSeq;
      collectAll(body, false, avoid);
      name = freshName(y, avoid);
      body = subst(body, y, Term::var(name));
    }
    return {name, body};
  }

  std::pair<std::string, TermPtr> guardMu(const std::string& b, TermPtr body) {
    std::string name = b;
    if (freeMuOfSeq.count(b) && freeMuVars(body).count(target)) {
      std::set<std::string> avoid = freeMuOfSeq;
      collectAll(body, true, avoid);
      avoid.insert(target);
      name = freshName(b, avoid);
      body = renameMu(body, b, name);
    }
    return {name, body};
  }
};

}  // namespace

TermPtr renameMuVar(const TermPtr& t, const std::string& old, const std::string& nw) {
  return renameMu(t, old, nw);
}

TermPtr structSubst(const TermPtr& t, const std::string& a, const ETermPtr& e) {
  MuSubst s(a, Seq{e});
  return s.apply(t);
}

ETermPtr structSubst(const ETermPtr& et, const std::string& a, const ETermPtr& e) {
  MuSubst s(a, Seq{e});
  return s.apply(et);
}

TermPtr structSubstSeq(const TermPtr& t, const std::string& a, const Seq& w) {
  MuSubst s(a, w);
  return s.apply(t);
}

TermPtr applySeq(TermPtr t, const Seq& w) {
  for (const auto& e : w) t = Term::app(std::move(t), e);
  return t;
}

bool isNice(const Seq& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i]->kind() == ETerm::Kind::Case) return false;
  return true;
}

bool isGood(const Seq& w) {
  for (const auto& e : w)
    if (e->kind() == ETerm::Kind::Case) return false;
  return true;
}

}  // namespace lmu
