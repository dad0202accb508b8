#pragma once

// The two-context sequent  Gamma |- t : A ; Delta  as a syntax-directed
// synthesizer. Annotations make every elimination synthesize, so checking is
// synthesis followed by comparison.

#include "lmu/syntax.hpp"

namespace lmu {

/// gamma types lambda-variables, delta types mu-variables. The namespaces are
/// disjoint, so the two maps never interact.
struct Contexts {
  std::map<std::string, TypePtr> gamma;
  std::map<std::string, TypePtr> delta;
};

std::string pathString(const std::vector<int>& path);  // "-" for the root

struct TypeError : Error {
  std::string rule;        // typing rule that failed
  std::vector<int> path;   // child indices from the root to the subterm
  TypeError(std::string rule_, std::vector<int> path_, const std::string& msg)
      : Error("[" + rule_ + " @ " + pathString(path_) + "] " + msg),
        rule(std::move(rule_)), path(std::move(path_)) {}
};

struct UnboundVariableError : TypeError {
  std::string name;
  UnboundVariableError(std::vector<int> path_, const std::string& n, bool muVar)
      : TypeError(muVar ? "abs_i" : "ax", std::move(path_),
                  std::string("unbound ") + (muVar ? "mu-name " : "variable ") + n),
        name(n) {}
};

struct AnnotationMismatchError : TypeError {
  using TypeError::TypeError;
};

struct MismatchError : TypeError {
  TypePtr expected, actual;
  MismatchError(std::vector<int> path_, TypePtr expected_, TypePtr actual_)
      : TypeError("check", std::move(path_),
                  "expected " + printType(expected_) + ", got " + printType(actual_)),
        expected(std::move(expected_)), actual(std::move(actual_)) {}
};

struct ElimMismatchError : Error {
  using Error::Error;
};

/// Certificate of derivability; only check() builds one.
class Judgement {
public:
  const Contexts& ctx() const { return ctx_; }
  const TermPtr& term() const { return term_; }
  const TypePtr& type() const { return type_; }

private:
  Judgement(Contexts c, TermPtr t, TypePtr ty)
      : ctx_(std::move(c)), term_(std::move(t)), type_(std::move(ty)) {}
  friend Judgement check(const Contexts&, const TermPtr&, const TypePtr&);

  Contexts ctx_;
  TermPtr term_;
  TypePtr type_;
};

/// The unique type of t under ctx, or a TypeError naming the failed rule and
/// the path to the offending subterm.
TypePtr infer(const Contexts& ctx, const TermPtr& t);

Judgement check(const Contexts& ctx, const TermPtr& t, const TypePtr& type);

/// Result type of one elimination: Arrow+Arg, And+Proj, Or+Case. This is also
/// the re-annotation rule for mu and case under classical/permutative steps.
TypePtr elimType(const TypePtr& type, const ETermPtr& e);

/// "x:P, y:P -> Q" comma-separated declarations; empty string means empty.
std::map<std::string, TypePtr> parseContextDecls(const std::string& src);

}  // namespace lmu
