#pragma once

// A second, intentionally naive rule-by-rule type checker used only to
// cross-validate the main inferencer. Context maps are passed by value, every
// rule is spelled out, and nothing is shared with lmu::infer.

#include <optional>

#include "lmu/typing.hpp"

namespace lmu::testing {

using TypeMap = std::map<std::string, TypePtr>;

inline std::optional<TypePtr> oracleInfer(TypeMap gamma, TypeMap delta,
                                          const TermPtr& t) {
  using K = Term::Kind;
  switch (t->kind()) {
    case K::Var: {
      auto it = gamma.find(t->name());
      if (it == gamma.end()) return std::nullopt;
      return it->second;
    }
    case K::Lam: {
      TypeMap g2 = gamma;
      g2[t->name()] = t->ann();
      auto body = oracleInfer(g2, delta, t->body());
      if (!body) return std::nullopt;
      return Type::arrow(t->ann(), *body);
    }
    case K::Pair: {
      auto a = oracleInfer(gamma, delta, t->fst());
      auto b = oracleInfer(gamma, delta, t->snd());
      if (!a || !b) return std::nullopt;
      return Type::conj(*a, *b);
    }
    case K::Inl: {
      auto a = oracleInfer(gamma, delta, t->body());
      if (!a) return std::nullopt;
      return Type::disj(*a, t->ann());
    }
    case K::Inr: {
      auto b = oracleInfer(gamma, delta, t->body());
      if (!b) return std::nullopt;
      return Type::disj(t->ann(), *b);
    }
    case K::Mu: {
      TypeMap d2 = delta;
      d2[t->name()] = t->ann();
      auto body = oracleInfer(gamma, d2, t->body());
      if (!body || (*body)->kind() != Type::Kind::Bottom) return std::nullopt;
      return t->ann();
    }
    case K::Named: {
      auto it = delta.find(t->name());
      if (it == delta.end()) return std::nullopt;
      auto body = oracleInfer(gamma, delta, t->body());
      if (!body || !typeEq(*body, it->second)) return std::nullopt;
      return Type::bottom();
    }
    case K::App: {
      auto head = oracleInfer(gamma, delta, t->head());
      if (!head) return std::nullopt;
      const ETermPtr& e = t->arg();
      switch (e->kind()) {
        case ETerm::Kind::Arg: {
          if ((*head)->kind() != Type::Kind::Arrow) return std::nullopt;
          auto arg = oracleInfer(gamma, delta, e->term());
          if (!arg || !typeEq(*arg, (*head)->left())) return std::nullopt;
          return (*head)->right();
        }
        case ETerm::Kind::Proj1:
          if ((*head)->kind() != Type::Kind::And) return std::nullopt;
          return (*head)->left();
        case ETerm::Kind::Proj2:
          if ((*head)->kind() != Type::Kind::And) return std::nullopt;
          return (*head)->right();
        case ETerm::Kind::Case: {
          if ((*head)->kind() != Type::Kind::Or) return std::nullopt;
          TypeMap gl = gamma;
          gl[e->leftName()] = (*head)->left();
          auto l = oracleInfer(gl, delta, e->left());
          if (!l || !typeEq(*l, e->ann())) return std::nullopt;
          TypeMap gr = gamma;
          gr[e->rightName()] = (*head)->right();
          auto r = oracleInfer(gr, delta, e->right());
          if (!r || !typeEq(*r, e->ann())) return std::nullopt;
          return e->ann();
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace lmu::testing
