#include "lmu/syntax.hpp"

namespace lmu {

namespace {

// levels: 0 arrow ok, 1 \/ ok, 2 /\ ok, 3 atom only
void ptype(const TypePtr& t, int level, std::string& out) {
  switch (t->kind()) {
    case Type::Kind::PropVar:
      out += t->name();
      return;
    case Type::Kind::Bottom:
      out += "bot";
      return;
    case Type::Kind::Arrow:
      if (level > 0) {
        out += '(';
        ptype(t, 0, out);
        out += ')';
      } else {
        ptype(t->left(), 1, out);
        out += " -> ";
        ptype(t->right(), 0, out);
      }
      return;
    case Type::Kind::Or:
      if (level > 1) {
        out += '(';
        ptype(t, 0, out);
        out += ')';
      } else {
        ptype(t->left(), 1, out);
        out += " \\/ ";
        ptype(t->right(), 2, out);
      }
      return;
    case Type::Kind::And:
      if (level > 2) {
        out += '(';
        ptype(t, 0, out);
        out += ')';
      } else {
        ptype(t->left(), 2, out);
        out += " /\\ ";
        ptype(t->right(), 3, out);
      }
      return;
  }
}

void pterm(const TermPtr& t, bool greedyOk, std::string& out);
void pearg(const ETermPtr& e, std::string& out);

// A head whose rightmost production is a greedy Term would swallow following
// arguments, so such heads get parenthesized unless greediness is allowed.
void phead(const TermPtr& t, bool greedyOk, std::string& out) {
  switch (t->kind()) {
    case Term::Kind::Var:
      out += t->name();
      return;
    case Term::Kind::Lam:
      if (!greedyOk) {
        out += '(';
        phead(t, true, out);
        out += ')';
        return;
      }
      out += '\\';
      out += t->name();
      out += ':';
      ptype(t->ann(), 0, out);
      out += ". ";
      pterm(t->body(), true, out);
      return;
    case Term::Kind::Mu:
      if (!greedyOk) {
        out += '(';
        phead(t, true, out);
        out += ')';
        return;
      }
      out += "mu ";
      out += t->name();
      out += ':';
      ptype(t->ann(), 0, out);
      out += ". ";
      pterm(t->body(), true, out);
      return;
    case Term::Kind::Pair:
      out += '<';
      pterm(t->fst(), true, out);
      out += ", ";
      pterm(t->snd(), true, out);
      out += '>';
      return;
    case Term::Kind::Inl:
    case Term::Kind::Inr:
      out += t->kind() == Term::Kind::Inl ? "inl[" : "inr[";
      ptype(t->ann(), 0, out);
      out += "] ";
      phead(t->body(), greedyOk, out);
      return;
    case Term::Kind::Named:
      out += '[';
      out += t->name();
      out += "] ";
      phead(t->body(), greedyOk, out);
      return;
    case Term::Kind::App:
      out += '(';
      pterm(t, true, out);
      out += ')';
      return;
  }
}

void pearg(const ETermPtr& e, std::string& out) {
  switch (e->kind()) {
    case ETerm::Kind::Arg:
      phead(e->term(), false, out);
      return;
    case ETerm::Kind::Proj1:
      out += "p1";
      return;
    case ETerm::Kind::Proj2:
      out += "p2";
      return;
    case ETerm::Kind::Case:
      out += "case[";
      ptype(e->ann(), 0, out);
      out += "]{";
      out += e->leftName();
      out += ". ";
      pterm(e->left(), true, out);
      out += " | ";
      out += e->rightName();
      out += ". ";
      pterm(e->right(), true, out);
      out += '}';
      return;
  }
}

void pterm(const TermPtr& t, bool greedyOk, std::string& out) {
  if (t->kind() != Term::Kind::App) {
    phead(t, greedyOk, out);
    return;
  }
  // unfold the application spine
  std::vector<ETermPtr> args;
  TermPtr h = t;
  while (h->kind() == Term::Kind::App) {
    args.push_back(h->arg());
    h = h->head();
  }
  phead(h, false, out);
  for (auto it = args.rbegin(); it != args.rend(); ++it) {
    out += ' ';
    pearg(*it, out);
  }
}

}  // namespace

std::string printType(const TypePtr& t) {
  std::string out;
  ptype(t, 0, out);
  return out;
}

std::string printTerm(const TermPtr& t) {
  std::string out;
  pterm(t, true, out);
  return out;
}

std::string printETerm(const ETermPtr& e) {
  std::string out;
  pearg(e, out);
  return out;
}

std::string printSeq(const Seq& w) {
  if (w.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    pearg(w[i], out);
  }
  return out;
}

}  // namespace lmu
