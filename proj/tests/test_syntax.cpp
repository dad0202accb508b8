#include <doctest.h>

#include "lmu/harness.hpp"

using namespace lmu;

namespace {

TermPtr tp(const std::string& s) { return parseTerm(s); }
TypePtr ty(const std::string& s) { return parseType(s); }

// small deterministic batch of generated judgements for property checks
std::vector<Judgement> sampleBatch(int count, int maxSize = 14,
                                   std::uint64_t seed = 7) {
  GenConfig cfg;
  cfg.sampleCount = count;
  cfg.sampleMaxSize = maxSize;
  cfg.seed = seed;
  std::vector<Judgement> out;
  sampleTyped(cfg, [&](const Judgement& j) { out.push_back(j); });
  return out;
}

}  // namespace

TEST_CASE("type parsing follows the declared precedences") {
  CHECK(typeEq(ty("P -> P"), Type::arrow(Type::prop("P"), Type::prop("P"))));
  CHECK(typeEq(ty("bot -> P \\/ Q"),
               Type::arrow(Type::bottom(),
                           Type::disj(Type::prop("P"), Type::prop("Q")))));
  // /\ binds tighter than \/
  CHECK(typeEq(ty("P /\\ Q \\/ R"),
               Type::disj(Type::conj(Type::prop("P"), Type::prop("Q")),
                          Type::prop("R"))));
  // -> is right-associative
  CHECK(typeEq(ty("P -> Q -> R"),
               Type::arrow(Type::prop("P"),
                           Type::arrow(Type::prop("Q"), Type::prop("R")))));
  CHECK(typeEq(ty("(P -> Q) -> R"),
               Type::arrow(Type::arrow(Type::prop("P"), Type::prop("Q")),
                           Type::prop("R"))));
  // \/ and /\ associate to the left
  CHECK_EQ(printType(ty("P \\/ Q \\/ R")), "P \\/ Q \\/ R");
  CHECK_EQ(printType(ty("P \\/ (Q \\/ R)")), "P \\/ (Q \\/ R)");
}

TEST_CASE("term parsing") {
  TermPtr lam = tp("\\x:P. x");
  REQUIRE_EQ(lam->kind(), Term::Kind::Lam);
  CHECK_EQ(lam->name(), "x");
  CHECK(typeEq(lam->ann(), Type::prop("P")));
  CHECK_EQ(lam->body()->kind(), Term::Kind::Var);

  TermPtr muApp = tp("(mu a:P. [a] y) p1");
  REQUIRE_EQ(muApp->kind(), Term::Kind::App);
  CHECK_EQ(muApp->head()->kind(), Term::Kind::Mu);
  CHECK_EQ(muApp->arg()->kind(), ETerm::Kind::Proj1);
  CHECK_EQ(muApp->head()->body()->kind(), Term::Kind::Named);

  TermPtr caseApp = tp("z case[R]{x. x | y. y}");
  REQUIRE_EQ(caseApp->kind(), Term::Kind::App);
  CHECK_EQ(caseApp->head()->kind(), Term::Kind::Var);
  REQUIRE_EQ(caseApp->arg()->kind(), ETerm::Kind::Case);
  CHECK(typeEq(caseApp->arg()->ann(), Type::prop("R")));

  // application is left-associative over E-arguments
  TermPtr spine = tp("x y p1 z");
  REQUIRE_EQ(spine->kind(), Term::Kind::App);
  CHECK_EQ(spine->head()->kind(), Term::Kind::App);
  CHECK_EQ(spine->head()->head()->kind(), Term::Kind::App);

  // comments and whitespace
  CHECK(alphaEq(tp("\\x:P. -- binder\n  x"), tp("\\x:P. x")));
}

TEST_CASE("parse errors carry position") {
  CHECK_THROWS_AS(tp("\\x:P."), SyntaxError);
  CHECK_THROWS_AS(tp("(x"), SyntaxError);
  CHECK_THROWS_AS(ty("P ->"), SyntaxError);
  CHECK_THROWS_AS(tp("case"), SyntaxError);
  CHECK_THROWS_AS(tp("x /"), SyntaxError);
  try {
    tp("\\x:P.\n@");
    CHECK(false);
  } catch (const SyntaxError& e) {
    CHECK_EQ(e.line, 2);
    CHECK_EQ(e.column, 1);
  }
  // reserved words cannot be variables
  CHECK_THROWS_AS(tp("\\mu:P. x"), SyntaxError);
}

TEST_CASE("strict mode rejects unbound mu-names") {
  CHECK_NOTHROW(parseTerm("[a] x"));  // free mu-names are typed by delta
  CHECK_THROWS_AS(parseTerm("[a] x", true), UnboundMuError);
  CHECK_NOTHROW(parseTerm("mu a:P. [a] x", true));
  CHECK_THROWS_AS(parseTerm("mu a:P. [b] x", true), UnboundMuError);
}

TEST_CASE("parser freshens shadowing binders") {
  TermPtr t = tp("\\x:P. \\x:Q. x");
  REQUIRE_EQ(t->kind(), Term::Kind::Lam);
  CHECK_EQ(t->name(), "x");
  CHECK_NE(t->body()->name(), "x");
  // the inner occurrence refers to the inner binder
  CHECK_EQ(t->body()->body()->name(), t->body()->name());
  CHECK(alphaEq(t, tp("\\x:P. \\y:Q. y")));

  TermPtr m = tp("mu a:P. mu a:bot. [a] x");
  CHECK_NE(m->body()->name(), "a");
}

TEST_CASE("printing round-trips and matches the expected concrete forms") {
  CHECK_EQ(printTerm(tp("\\x:P. x")), "\\x:P. x");
  CHECK_EQ(printTerm(Term::pair(Term::var("x"), Term::var("y"))), "<x, y>");
  CHECK_EQ(printTerm(tp("(\\x:P. x) y")), "(\\x:P. x) y");
  CHECK_EQ(printTerm(tp("(mu a:P. [a] y) p1")), "(mu a:P. [a] y) p1");
  CHECK_EQ(printTerm(tp("z case[R]{x. x | y. y}")), "z case[R]{x. x | y. y}");
  CHECK_EQ(printTerm(tp("[a] (x y) z")), "[a] (x y) z");
  CHECK_EQ(printTerm(tp("inl[Q] x case[P]{u. u | v. x}")),
           "inl[Q] x case[P]{u. u | v. x}");
}

TEST_CASE("parse/print round-trip on generated terms") {
  for (const auto& j : sampleBatch(300)) {
    std::string printed = printTerm(j.term());
    CAPTURE(printed);
    CHECK(alphaEq(parseTerm(printed), j.term()));
    CHECK(typeEq(parseType(printType(j.type())), j.type()));
  }
}

TEST_CASE("alpha equivalence") {
  CHECK(alphaEq(tp("\\x:P. x"), tp("\\y:P. y")));
  CHECK_FALSE(alphaEq(tp("\\x:P. x"), tp("\\x:Q. x")));  // annotations compared
  CHECK(alphaEq(tp("mu a:P. [a] x"), tp("mu b:P. [b] x")));
  CHECK_FALSE(alphaEq(tp("mu a:P. [a] x"), tp("mu a:P. [c] x")));
  CHECK_FALSE(alphaEq(tp("x"), tp("y")));  // free names matter
  CHECK(alphaEq(tp("z case[R]{x. x | y. y}"), tp("z case[R]{u. u | v. v}")));
  // shadowing resolved consistently
  CHECK(alphaEq(tp("\\x:P. \\x:P. x"), tp("\\u:P. \\v:P. v")));
}

TEST_CASE("substitution examples") {
  CHECK(alphaEq(subst(tp("x"), "x", tp("y")), tp("y")));
  CHECK(alphaEq(subst(tp("\\x:P. x"), "x", tp("y")), tp("\\x:P. x")));
  // capture avoidance renames the binder
  TermPtr renamed = subst(tp("\\y:P. x"), "x", tp("y"));
  REQUIRE_EQ(renamed->kind(), Term::Kind::Lam);
  CHECK_NE(renamed->name(), "y");
  CHECK_EQ(renamed->body()->name(), "y");
  CHECK(alphaEq(renamed, tp("\\z:P. y")));
}

TEST_CASE("substitution avoids mu-capture too") {
  // v carries a free mu-name that a mu binder on the path would capture
  TermPtr t = tp("mu a:P. [b] x");
  TermPtr v = tp("mu c:Q. [a] z");
  TermPtr r = subst(t, "x", v);
  REQUIRE_EQ(r->kind(), Term::Kind::Mu);
  CHECK_NE(r->name(), "a");
  auto fm = freeMuVars(r);
  CHECK(fm.count("a"));
  CHECK(fm.count("b"));
}

TEST_CASE("free variables of substitution results") {
  TermPtr v = tp("\\w:P. w z'");
  for (const auto& j : sampleBatch(150, 12, 11)) {
    TermPtr t = j.term();
    auto before = freeLamVars(t);
    auto after = freeLamVars(subst(t, "x1", v));
    // free(subst) is contained in (free(t) - {x}) + free(v)
    std::set<std::string> allowed = before;
    allowed.erase("x1");
    for (const auto& n : freeLamVars(v)) allowed.insert(n);
    for (const auto& n : after) {
      CAPTURE(printTerm(t));
      CHECK(allowed.count(n));
    }
  }
}

TEST_CASE("structural substitution") {
  CHECK(alphaEq(structSubst(tp("[a] x"), "a", ETerm::arg(tp("y"))),
                tp("[a] (x y)")));
  // inductive bottom-up pass
  CHECK(alphaEq(structSubst(tp("[a] ([a] x)"), "a", ETerm::proj1()),
                tp("[a] (([a] (x p1)) p1)")));
  CHECK(alphaEq(structSubst(tp("[b] x"), "a", ETerm::arg(tp("y"))), tp("[b] x")));
  // inner binders shadow
  CHECK(alphaEq(structSubst(tp("mu a:P. [a] x"), "a", ETerm::proj1()),
                tp("mu a:P. [a] x")));
}

TEST_CASE("structural substitution over sequences") {
  TermPtr t = tp("[a] x");
  CHECK(alphaEq(structSubstSeq(t, "a", {}), t));
  Seq w = {ETerm::arg(tp("y")), ETerm::proj1()};
  CHECK(alphaEq(structSubstSeq(t, "a", w), tp("[a] (x y p1)")));
}

TEST_CASE("struct_subst_seq composition identity on generated terms") {
  auto batch = sampleBatch(200, 13, 23);
  std::vector<Seq> seqs = {
      {ETerm::arg(tp("y"))},
      {ETerm::proj1(), ETerm::arg(tp("\\w:P. w")), ETerm::proj2()},
      {ETerm::arg(tp("y")),
       ETerm::caseOf(Type::prop("R"), "u", tp("u"), "v", tp("v"))},
  };
  std::size_t i = 0;
  for (const auto& j : batch) {
    const Seq& w = seqs[i++ % seqs.size()];
    TermPtr whole = structSubstSeq(j.term(), "a1", w);
    TermPtr stepwise = structSubst(j.term(), "a1", w[0]);
    stepwise = structSubstSeq(stepwise, "a1", Seq(w.begin() + 1, w.end()));
    CAPTURE(printTerm(j.term()));
    CHECK(alphaEq(whole, stepwise));
  }
}

TEST_CASE("apply_seq") {
  CHECK(alphaEq(applySeq(tp("x"), {}), tp("x")));
  CHECK(alphaEq(applySeq(tp("x"), {ETerm::arg(tp("y"))}), tp("x y")));
  CHECK(alphaEq(applySeq(tp("x"), {ETerm::proj1(), ETerm::arg(tp("y"))}),
                tp("x p1 y")));
}

TEST_CASE("nice and good sequence predicates") {
  ETermPtr frame = ETerm::caseOf(Type::prop("R"), "x", tp("x"), "y", tp("y"));
  Seq niceAtEnd = {ETerm::arg(tp("y")), frame};
  CHECK(isNice(niceAtEnd));
  CHECK_FALSE(isGood(niceAtEnd));
  Seq caseFirst = {frame, ETerm::arg(tp("y"))};
  CHECK_FALSE(isNice(caseFirst));
  CHECK(isNice({}));
  CHECK(isGood({}));
  Seq good = {ETerm::arg(tp("y")), ETerm::proj1()};
  CHECK(isGood(good));
  CHECK(isNice(good));  // good implies nice
}

TEST_CASE("good implies nice on arbitrary sequences") {
  auto batch = sampleBatch(60, 10, 31);
  for (std::size_t i = 0; i + 2 < batch.size(); i += 3) {
    Seq w = {ETerm::arg(batch[i].term()), ETerm::proj1(),
             ETerm::arg(batch[i + 1].term()), ETerm::proj2(),
             ETerm::arg(batch[i + 2].term())};
    if (isGood(w)) CHECK(isNice(w));
  }
}
