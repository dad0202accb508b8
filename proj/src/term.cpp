#include "lmu/syntax.hpp"

namespace lmu {

namespace {

std::size_t hashCombine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hashString(const std::string& s) {
  return std::hash<std::string>{}(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// Type

Type::Type(Kind k, std::string n, TypePtr l, TypePtr r)
    : kind_(k), name_(std::move(n)), left_(std::move(l)), right_(std::move(r)) {
  hash_ = hashCombine(static_cast<std::size_t>(kind_) + 1, hashString(name_));
  size_ = 1;
  if (left_) {
    hash_ = hashCombine(hash_, left_->hash());
    size_ += left_->size();
  }
  if (right_) {
    hash_ = hashCombine(hash_, right_->hash());
    size_ += right_->size();
  }
}

TypePtr Type::prop(std::string name) {
  return TypePtr(new Type(Kind::PropVar, std::move(name), nullptr, nullptr));
}
TypePtr Type::bottom() {
  static const TypePtr bot(new Type(Kind::Bottom, "", nullptr, nullptr));
  return bot;
}
TypePtr Type::arrow(TypePtr dom, TypePtr cod) {
  return TypePtr(new Type(Kind::Arrow, "", std::move(dom), std::move(cod)));
}
TypePtr Type::conj(TypePtr l, TypePtr r) {
  return TypePtr(new Type(Kind::And, "", std::move(l), std::move(r)));
}
TypePtr Type::disj(TypePtr l, TypePtr r) {
  return TypePtr(new Type(Kind::Or, "", std::move(l), std::move(r)));
}

bool typeEq(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash() != b->hash() || a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Type::Kind::PropVar: return a->name() == b->name();
    case Type::Kind::Bottom: return true;
    default: return typeEq(a->left(), b->left()) && typeEq(a->right(), b->right());
  }
}

// ---------------------------------------------------------------------------
// Term

TermPtr Term::var(std::string x) {
  auto t = new Term();
  t->kind_ = Kind::Var;
  t->name_ = std::move(x);
  t->hash_ = hashCombine(1, hashString(t->name_));
  t->size_ = 1;
  return TermPtr(t);
}

TermPtr Term::lam(std::string x, TypePtr ann, TermPtr body) {
  auto t = new Term();
  t->kind_ = Kind::Lam;
  t->name_ = std::move(x);
  t->ann_ = std::move(ann);
  t->sub1_ = std::move(body);
  t->hash_ = hashCombine(hashCombine(hashCombine(2, hashString(t->name_)),
                                     t->ann_->hash()),
                         t->sub1_->hash());
  t->size_ = 1 + t->ann_->size() + t->sub1_->size();
  return TermPtr(t);
}

TermPtr Term::app(TermPtr head, ETermPtr arg) {
  auto t = new Term();
  t->kind_ = Kind::App;
  t->sub1_ = std::move(head);
  t->earg_ = std::move(arg);
  t->hash_ = hashCombine(hashCombine(3, t->sub1_->hash()), t->earg_->hash());
  t->size_ = 1 + t->sub1_->size() + t->earg_->size();
  return TermPtr(t);
}

TermPtr Term::pair(TermPtr fst, TermPtr snd) {
  auto t = new Term();
  t->kind_ = Kind::Pair;
  t->sub1_ = std::move(fst);
  t->sub2_ = std::move(snd);
  t->hash_ = hashCombine(hashCombine(4, t->sub1_->hash()), t->sub2_->hash());
  t->size_ = 1 + t->sub1_->size() + t->sub2_->size();
  return TermPtr(t);
}

TermPtr Term::inl(TypePtr otherAnn, TermPtr body) {
  auto t = new Term();
  t->kind_ = Kind::Inl;
  t->ann_ = std::move(otherAnn);
  t->sub1_ = std::move(body);
  t->hash_ = hashCombine(hashCombine(5, t->ann_->hash()), t->sub1_->hash());
  t->size_ = 1 + t->ann_->size() + t->sub1_->size();
  return TermPtr(t);
}

TermPtr Term::inr(TypePtr otherAnn, TermPtr body) {
  auto t = new Term();
  t->kind_ = Kind::Inr;
  t->ann_ = std::move(otherAnn);
  t->sub1_ = std::move(body);
  t->hash_ = hashCombine(hashCombine(6, t->ann_->hash()), t->sub1_->hash());
  t->size_ = 1 + t->ann_->size() + t->sub1_->size();
  return TermPtr(t);
}

TermPtr Term::mu(std::string a, TypePtr ann, TermPtr body) {
  auto t = new Term();
  t->kind_ = Kind::Mu;
  t->name_ = std::move(a);
  t->ann_ = std::move(ann);
  t->sub1_ = std::move(body);
  t->hash_ = hashCombine(hashCombine(hashCombine(7, hashString(t->name_)),
                                     t->ann_->hash()),
                         t->sub1_->hash());
  t->size_ = 1 + t->ann_->size() + t->sub1_->size();
  return TermPtr(t);
}

TermPtr Term::named(std::string a, TermPtr body) {
  auto t = new Term();
  t->kind_ = Kind::Named;
  t->name_ = std::move(a);
  t->sub1_ = std::move(body);
  t->hash_ = hashCombine(hashCombine(8, hashString(t->name_)), t->sub1_->hash());
  t->size_ = 1 + t->sub1_->size();
  return TermPtr(t);
}

// ---------------------------------------------------------------------------
// ETerm

ETermPtr ETerm::arg(TermPtr t) {
  auto e = new ETerm();
  e->kind_ = Kind::Arg;
  e->term_ = std::move(t);
  e->hash_ = hashCombine(11, e->term_->hash());
  e->size_ = e->term_->size();
  return ETermPtr(e);
}

ETermPtr ETerm::proj1() {
  static const ETermPtr p = [] {
    auto e = new ETerm();
    e->kind_ = Kind::Proj1;
    e->hash_ = 12;
    e->size_ = 1;
    return ETermPtr(e);
  }();
  return p;
}

ETermPtr ETerm::proj2() {
  static const ETermPtr p = [] {
    auto e = new ETerm();
    e->kind_ = Kind::Proj2;
    e->hash_ = 13;
    e->size_ = 1;
    return ETermPtr(e);
  }();
  return p;
}

ETermPtr ETerm::caseOf(TypePtr resAnn, std::string x, TermPtr left,
                       std::string y, TermPtr right) {
  auto e = new ETerm();
  e->kind_ = Kind::Case;
  e->ann_ = std::move(resAnn);
  e->x_ = std::move(x);
  e->left_ = std::move(left);
  e->y_ = std::move(y);
  e->right_ = std::move(right);
  e->hash_ = hashCombine(
      hashCombine(hashCombine(hashCombine(hashCombine(14, e->ann_->hash()),
                                          hashString(e->x_)),
                              e->left_->hash()),
                  hashString(e->y_)),
      e->right_->hash());
  e->size_ = 1 + e->ann_->size() + e->left_->size() + e->right_->size();
  return ETermPtr(e);
}

// ---------------------------------------------------------------------------
// Structural equality

bool termEq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash() != b->hash() || a->kind() != b->kind() || a->size() != b->size())
    return false;
  switch (a->kind()) {
    case Term::Kind::Var:
      return a->name() == b->name();
    case Term::Kind::Lam:
      return a->name() == b->name() && typeEq(a->ann(), b->ann()) &&
             termEq(a->body(), b->body());
    case Term::Kind::App:
      return termEq(a->head(), b->head()) && etermEq(a->arg(), b->arg());
    case Term::Kind::Pair:
      return termEq(a->fst(), b->fst()) && termEq(a->snd(), b->snd());
    case Term::Kind::Inl:
    case Term::Kind::Inr:
      return typeEq(a->ann(), b->ann()) && termEq(a->body(), b->body());
    case Term::Kind::Mu:
      return a->name() == b->name() && typeEq(a->ann(), b->ann()) &&
             termEq(a->body(), b->body());
    case Term::Kind::Named:
      return a->name() == b->name() && termEq(a->body(), b->body());
  }
  return false;
}

bool etermEq(const ETermPtr& a, const ETermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash() != b->hash() || a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case ETerm::Kind::Arg:
      return termEq(a->term(), b->term());
    case ETerm::Kind::Proj1:
    case ETerm::Kind::Proj2:
      return true;
    case ETerm::Kind::Case:
      return typeEq(a->ann(), b->ann()) && a->leftName() == b->leftName() &&
             a->rightName() == b->rightName() && termEq(a->left(), b->left()) &&
             termEq(a->right(), b->right());
  }
  return false;
}

// ---------------------------------------------------------------------------
// Free names

namespace {

void collectFree(const TermPtr& t, bool muNamespace,
                 std::set<std::string>& bound, std::set<std::string>& out);

void collectFree(const ETermPtr& e, bool muNamespace,
                 std::set<std::string>& bound, std::set<std::string>& out) {
  switch (e->kind()) {
    case ETerm::Kind::Arg:
      collectFree(e->term(), muNamespace, bound, out);
      break;
    case ETerm::Kind::Proj1:
    case ETerm::Kind::Proj2:
      break;
    case ETerm::Kind::Case: {
      if (!muNamespace) {
        bool hadL = bound.count(e->leftName()) > 0;
        bound.insert(e->leftName());
        collectFree(e->left(), muNamespace, bound, out);
        if (!hadL) bound.erase(e->leftName());
        bool hadR = bound.count(e->rightName()) > 0;
        bound.insert(e->rightName());
        collectFree(e->right(), muNamespace, bound, out);
        if (!hadR) bound.erase(e->rightName());
      } else {
        collectFree(e->left(), muNamespace, bound, out);
        collectFree(e->right(), muNamespace, bound, out);
      }
      break;
    }
  }
}

void collectFree(const TermPtr& t, bool muNamespace,
                 std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind()) {
    case Term::Kind::Var:
      if (!muNamespace && !bound.count(t->name())) out.insert(t->name());
      break;
    case Term::Kind::Lam: {
      if (!muNamespace) {
        bool had = bound.count(t->name()) > 0;
        bound.insert(t->name());
        collectFree(t->body(), muNamespace, bound, out);
        if (!had) bound.erase(t->name());
      } else {
        collectFree(t->body(), muNamespace, bound, out);
      }
      break;
    }
    case Term::Kind::App:
      collectFree(t->head(), muNamespace, bound, out);
      collectFree(t->arg(), muNamespace, bound, out);
      break;
    case Term::Kind::Pair:
      collectFree(t->fst(), muNamespace, bound, out);
      collectFree(t->snd(), muNamespace, bound, out);
      break;
    case Term::Kind::Inl:
    case Term::Kind::Inr:
      collectFree(t->body(), muNamespace, bound, out);
      break;
    case Term::Kind::Mu: {
      if (muNamespace) {
        bool had = bound.count(t->name()) > 0;
        bound.insert(t->name());
        collectFree(t->body(), muNamespace, bound, out);
        if (!had) bound.erase(t->name());
      } else {
        collectFree(t->body(), muNamespace, bound, out);
      }
      break;
    }
    case Term::Kind::Named:
      if (muNamespace && !bound.count(t->name())) out.insert(t->name());
      collectFree(t->body(), muNamespace, bound, out);
      break;
  }
}

}  // namespace

std::set<std::string> freeLamVars(const TermPtr& t) {
  std::set<std::string> bound, out;
  collectFree(t, false, bound, out);
  return out;
}
std::set<std::string> freeLamVars(const ETermPtr& e) {
  std::set<std::string> bound, out;
  collectFree(e, false, bound, out);
  return out;
}
std::set<std::string> freeMuVars(const TermPtr& t) {
  std::set<std::string> bound, out;
  collectFree(t, true, bound, out);
  return out;
}
std::set<std::string> freeMuVars(const ETermPtr& e) {
  std::set<std::string> bound, out;
  collectFree(e, true, bound, out);
  return out;
}

namespace {

void collectAllNames(const TermPtr& t, bool muNamespace, std::set<std::string>& out);

void collectAllNames(const ETermPtr& e, bool muNamespace, std::set<std::string>& out) {
  switch (e->kind()) {
    case ETerm::Kind::Arg:
      collectAllNames(e->term(), muNamespace, out);
      break;
    case ETerm::Kind::Proj1:
    case ETerm::Kind::Proj2:
      break;
    case ETerm::Kind::Case:
      if (!muNamespace) {
        out.insert(e->leftName());
        out.insert(e->rightName());
      }
      collectAllNames(e->left(), muNamespace, out);
      collectAllNames(e->right(), muNamespace, out);
      break;
  }
}

void collectAllNames(const TermPtr& t, bool muNamespace, std::set<std::string>& out) {
  switch (t->kind()) {
    case Term::Kind::Var:
      if (!muNamespace) out.insert(t->name());
      break;
    case Term::Kind::Lam:
      if (!muNamespace) out.insert(t->name());
      collectAllNames(t->body(), muNamespace, out);
      break;
    case Term::Kind::App:
      collectAllNames(t->head(), muNamespace, out);
      collectAllNames(t->arg(), muNamespace, out);
      break;
    case Term::Kind::Pair:
      collectAllNames(t->fst(), muNamespace, out);
      collectAllNames(t->snd(), muNamespace, out);
      break;
    case Term::Kind::Inl:
    case Term::Kind::Inr:
      collectAllNames(t->body(), muNamespace, out);
      break;
    case Term::Kind::Mu:
    case Term::Kind::Named:
      if (muNamespace) out.insert(t->name());
      collectAllNames(t->body(), muNamespace, out);
      break;
  }
}

}  // namespace

std::set<std::string> allLamNames(const TermPtr& t) {
  std::set<std::string> out;
  collectAllNames(t, false, out);
  return out;
}

std::set<std::string> allMuNames(const TermPtr& t) {
  std::set<std::string> out;
  collectAllNames(t, true, out);
  return out;
}

std::string freshName(const std::string& base, const std::set<std::string>& avoid) {
  std::string cand = base;
  while (avoid.count(cand)) cand += '\'';
  return cand;
}

}  // namespace lmu
