#pragma once

// Terms and types of the lambda-mu calculus with bot/->/ /\ / \/:
// representation, parsing, printing, alpha-equivalence and the two
// substitutions (ordinary and structural) everything else is built on.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lmu {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
  int line;
  int column;
  SyntaxError(const std::string& msg, int line_, int col_)
      : Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_), column(col_) {}
};

struct UnboundMuError : Error {
  std::string name;
  explicit UnboundMuError(const std::string& n)
      : Error("unbound mu-name [" + n + "] in strict mode"), name(n) {}
};

// ---------------------------------------------------------------------------
// Types

class Type;
using TypePtr = std::shared_ptr<const Type>;

/// A propositional formula: variables, bot, ->, /\, \/.
/// Immutable; compared structurally everywhere (no type variables).
class Type {
public:
  enum class Kind { PropVar, Bottom, Arrow, And, Or };

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }  // PropVar only
  const TypePtr& left() const { return left_; }      // Arrow dom, And/Or left
  const TypePtr& right() const { return right_; }    // Arrow cod, And/Or right
  std::size_t hash() const { return hash_; }
  int size() const { return size_; }  // constructor node count

  static TypePtr prop(std::string name);
  static TypePtr bottom();
  static TypePtr arrow(TypePtr dom, TypePtr cod);
  static TypePtr conj(TypePtr l, TypePtr r);
  static TypePtr disj(TypePtr l, TypePtr r);

private:
  Type(Kind k, std::string n, TypePtr l, TypePtr r);

  Kind kind_;
  std::string name_;
  TypePtr left_, right_;
  std::size_t hash_ = 0;
  int size_ = 1;
};

bool typeEq(const TypePtr& a, const TypePtr& b);

// ---------------------------------------------------------------------------
// Terms and E-terms

class Term;
class ETerm;
using TermPtr = std::shared_ptr<const Term>;
using ETermPtr = std::shared_ptr<const ETerm>;

/// A finite sequence of E-terms, read as an elimination spine; may be empty.
using Seq = std::vector<ETermPtr>;

/// Proof terms. Lambda-names and mu-names live in disjoint namespaces; the
/// annotations (lambda parameter, inl/inr missing disjunct, mu result) make
/// type checking syntax-directed.
class Term {
public:
  enum class Kind { Var, Lam, App, Pair, Inl, Inr, Mu, Named };

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }  // Var / Lam param / Mu / Named
  const TypePtr& ann() const { return ann_; }        // Lam / Inl / Inr / Mu
  const TermPtr& body() const { return sub1_; }      // Lam / Inl / Inr / Mu / Named
  const TermPtr& head() const { return sub1_; }      // App
  const ETermPtr& arg() const { return earg_; }      // App
  const TermPtr& fst() const { return sub1_; }       // Pair
  const TermPtr& snd() const { return sub2_; }       // Pair
  std::size_t hash() const { return hash_; }
  int size() const { return size_; }  // node count, type annotations included

  static TermPtr var(std::string x);
  static TermPtr lam(std::string x, TypePtr ann, TermPtr body);
  static TermPtr app(TermPtr head, ETermPtr arg);
  static TermPtr pair(TermPtr fst, TermPtr snd);
  static TermPtr inl(TypePtr otherAnn, TermPtr body);
  static TermPtr inr(TypePtr otherAnn, TermPtr body);
  static TermPtr mu(std::string a, TypePtr ann, TermPtr body);
  static TermPtr named(std::string a, TermPtr body);

private:
  Term() = default;

  Kind kind_ = Kind::Var;
  std::string name_;
  TypePtr ann_;
  TermPtr sub1_, sub2_;
  ETermPtr earg_;
  std::size_t hash_ = 0;
  int size_ = 1;
};

/// Argument shapes: a term, a projection, or a case frame [x.u, y.v]
/// (x bound in u only, y in v only).
class ETerm {
public:
  enum class Kind { Arg, Proj1, Proj2, Case };

  Kind kind() const { return kind_; }
  const TermPtr& term() const { return term_; }      // Arg
  const TypePtr& ann() const { return ann_; }        // Case result annotation
  const std::string& leftName() const { return x_; }
  const TermPtr& left() const { return left_; }
  const std::string& rightName() const { return y_; }
  const TermPtr& right() const { return right_; }
  std::size_t hash() const { return hash_; }
  int size() const { return size_; }

  static ETermPtr arg(TermPtr t);
  static ETermPtr proj1();
  static ETermPtr proj2();
  static ETermPtr caseOf(TypePtr resAnn, std::string x, TermPtr left,
                         std::string y, TermPtr right);

private:
  ETerm() = default;

  Kind kind_ = Kind::Proj1;
  TermPtr term_;
  TypePtr ann_;
  std::string x_, y_;
  TermPtr left_, right_;
  std::size_t hash_ = 0;
  int size_ = 1;
};

// Structural (not alpha) equality and hashing; the hash is precomputed per
// node, so unordered containers over canonical forms are cheap.
bool termEq(const TermPtr& a, const TermPtr& b);
bool etermEq(const ETermPtr& a, const ETermPtr& b);

struct TermHash {
  std::size_t operator()(const TermPtr& t) const { return t->hash(); }
};
struct TermStructEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return termEq(a, b); }
};

// ---------------------------------------------------------------------------
// Free names

std::set<std::string> freeLamVars(const TermPtr& t);
std::set<std::string> freeLamVars(const ETermPtr& e);
std::set<std::string> freeMuVars(const TermPtr& t);
std::set<std::string> freeMuVars(const ETermPtr& e);

// Every name of the namespace occurring in the term, bound or free; the
// avoid-sets for freshening.
std::set<std::string> allLamNames(const TermPtr& t);
std::set<std::string> allMuNames(const TermPtr& t);

/// Smallest primed variant of `base` not in `avoid` (base, base', base'', ...).
std::string freshName(const std::string& base, const std::set<std::string>& avoid);

// ---------------------------------------------------------------------------
// Alpha-equivalence

/// Canonical renaming of binders in traversal order; free names untouched.
/// Two terms are alpha-equivalent iff their canonical forms are structurally
/// equal, so canonical forms serve as memo keys for set-valued operations.
TermPtr alphaCanonical(const TermPtr& t);
ETermPtr alphaCanonical(const ETermPtr& e);

bool alphaEq(const TermPtr& a, const TermPtr& b);
bool alphaEq(const ETermPtr& a, const ETermPtr& b);
bool alphaEqSeq(const Seq& a, const Seq& b);

// ---------------------------------------------------------------------------
// Substitution

/// Capture-avoiding replacement of the free lambda-variable x by v.
TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& v);
ETermPtr subst(const ETermPtr& e, const std::string& x, const TermPtr& v);
Seq subst(const Seq& w, const std::string& x, const TermPtr& v);

/// Simultaneous capture-avoiding substitution (needed when replacement terms
/// may mention other substituted variables).
TermPtr substPar(const TermPtr& t, const std::map<std::string, TermPtr>& sub);

/// Rename free occurrences of the mu-name `old` to `nw`; `nw` must not occur
/// in t (callers pick it with freshName).
TermPtr renameMuVar(const TermPtr& t, const std::string& old, const std::string& nw);

/// Structural substitution t[a:=*e]: each subterm (a v) with this free a
/// becomes (a (v' e)), v' being the already-transformed v. e is inserted
/// unchanged and never rewritten.
TermPtr structSubst(const TermPtr& t, const std::string& a, const ETermPtr& e);
ETermPtr structSubst(const ETermPtr& et, const std::string& a, const ETermPtr& e);

/// t[a:=*w]: each (a v) becomes (a (v' w1 ... wn)); t itself when w is empty.
TermPtr structSubstSeq(const TermPtr& t, const std::string& a, const Seq& w);

/// ((t w1) ... wn); t when the sequence is empty.
TermPtr applySeq(TermPtr t, const Seq& w);

// ---------------------------------------------------------------------------
// Sequence shape predicates (SN-ness of elements is the reduction module's job)

/// No element except possibly the last is a case frame.
bool isNice(const Seq& w);
/// No element at all is a case frame.
bool isGood(const Seq& w);

// ---------------------------------------------------------------------------
// Concrete syntax
//
//   Type  ::= OrT ("->" Type)?          right-assoc
//   OrT   ::= AndT ("\/" AndT)*         left-assoc
//   AndT  ::= AtomT ("/\" AtomT)*       left-assoc
//   AtomT ::= ident | "bot" | "(" Type ")"
//   Term  ::= Head EArg*
//   Head  ::= ident | "\" ident ":" Type "." Term | "<" Term "," Term ">"
//           | "inl" "[" Type "]" Head | "inr" "[" Type "]" Head
//           | "mu" ident ":" Type "." Term | "[" ident "]" Head | "(" Term ")"
//   EArg  ::= Head | "p1" | "p2"
//           | "case" "[" Type "]" "{" ident "." Term "|" ident "." Term "}"
//
// ident ::= [A-Za-z][A-Za-z0-9_']*; "bot","mu","inl","inr","case","p1","p2"
// are reserved. "--" comments to end of line, whitespace insignificant.

TypePtr parseType(std::string_view src);
/// strictMu=true rejects [a] occurrences with no enclosing "mu a".
/// Binders that shadow an enclosing binder of the same namespace are
/// freshened during parsing, so parsed terms carry no shadowing.
TermPtr parseTerm(std::string_view src, bool strictMu = false);

std::string printType(const TypePtr& t);
std::string printTerm(const TermPtr& t);
std::string printETerm(const ETermPtr& e);  // in EArg syntax
std::string printSeq(const Seq& w);         // space-separated EArgs, "{}" when empty

}  // namespace lmu
