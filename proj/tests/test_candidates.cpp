#include <doctest.h>

#include "lmu/harness.hpp"

using namespace lmu;

namespace {

TermPtr tp(const std::string& s) { return parseTerm(s); }
TypePtr ty(const std::string& s) { return parseType(s); }

bool containsSeq(const std::vector<Seq>& seqs, const Seq& w) {
  for (const auto& s : seqs)
    if (alphaEqSeq(s, w)) return true;
  return false;
}

bool containsTerm(const std::vector<TermPtr>& ts, const TermPtr& t) {
  for (const auto& u : ts)
    if (alphaEq(u, t)) return true;
  return false;
}

}  // namespace

TEST_CASE("the interpretation is total and fixed to the SN set") {
  Interpretation interp;
  for (const auto& name : {"P", "Q", "R", "anything"})
    CHECK_EQ(interp(name), CandidateMarker::SnSet);
}

TEST_CASE("battery base cases") {
  for (int d = 0; d <= 3; ++d) {
    const Battery& b = battery(ty("P"), d);
    REQUIRE_EQ(b.seqs.size(), 1);
    CHECK(b.seqs[0].empty());
  }
  CHECK_EQ(battery(ty("bot"), 2).seqs.size(), 1);
}

TEST_CASE("battery for an arrow type at depth 1") {
  const Battery& b = battery(ty("P -> Q"), 1);
  // the empty spine plus one bare-variable argument
  REQUIRE_EQ(b.seqs.size(), 2);
  CHECK(b.seqs[0].empty());
  REQUIRE_EQ(b.seqs[1].size(), 1);
  REQUIRE_EQ(b.seqs[1][0]->kind(), ETerm::Kind::Arg);
  CHECK_EQ(b.seqs[1][0]->term()->kind(), Term::Kind::Var);
}

TEST_CASE("battery for a conjunction") {
  const Battery& b = battery(ty("P /\\ Q"), 1);
  REQUIRE_EQ(b.seqs.size(), 3);
  CHECK(containsSeq(b.seqs, {ETerm::proj1()}));
  CHECK(containsSeq(b.seqs, {ETerm::proj2()}));
}

TEST_CASE("battery for a disjunction at depth 1") {
  const Battery& b = battery(ty("P \\/ Q"), 1);
  REQUIRE_EQ(b.seqs.size(), 3);
  // identity-ish branches (the binder applied to the empty spine) and the
  // constant branches over the free variable cz
  CHECK(containsSeq(b.seqs, {ETerm::caseOf(Type::bottom(), "u", tp("u"), "v",
                                           tp("v"))}));
  CHECK(containsSeq(b.seqs, {ETerm::caseOf(Type::bottom(), "u", tp("cz"), "v",
                                           tp("cz"))}));
}

TEST_CASE("battery invariants over the default pool") {
  for (const auto& poolType : defaultTypePool()) {
    for (int d = 0; d <= 3; ++d) {
      const Battery& b = battery(poolType, d);
      CAPTURE(printType(poolType));
      CAPTURE(d);
      // the empty sequence is always a member
      CHECK(containsSeq(b.seqs, {}));
      for (const auto& w : b.seqs) {
        CHECK(isNice(w));
        for (const auto& e : w) CHECK(isSn(e).known);
      }
      // monotone in depth
      if (d > 0) {
        const Battery& prev = battery(poolType, d - 1);
        for (const auto& w : prev.seqs) {
          CAPTURE(printSeq(w));
          CHECK(containsSeq(b.seqs, w));
        }
      }
    }
  }
}

TEST_CASE("inhabitants") {
  auto atDepth0 = inhabitants(ty("P"), 0);
  REQUIRE_EQ(atDepth0.size(), 1);
  CHECK_EQ(atDepth0[0]->kind(), Term::Kind::Var);

  // the mu over an SN body with the bound name not free
  auto atDepth1 = inhabitants(ty("P"), 1);
  CHECK(containsTerm(atDepth1, tp("mu a:P. bz")));

  auto arrows = inhabitants(ty("P -> P"), 2);
  CHECK(containsTerm(arrows, tp("\\x:P. x")));

  // monotone in depth
  for (const auto& poolType : defaultTypePool()) {
    for (int d = 1; d <= 3; ++d) {
      auto smaller = inhabitants(poolType, d - 1);
      auto larger = inhabitants(poolType, d);
      for (const auto& t : smaller) {
        CAPTURE(printType(poolType));
        CHECK(containsTerm(larger, t));
      }
    }
  }
}

TEST_CASE("inhabitants are SN and pass their own member test") {
  for (const auto& poolType : defaultTypePool()) {
    for (const auto& t : inhabitants(poolType, 2)) {
      CAPTURE(printType(poolType));
      CAPTURE(printTerm(t));
      CHECK(isSn(t).known);
      CHECK(memberTest(t, poolType, 2));
    }
  }
}

TEST_CASE("member_test accepts lambda-variables at every type") {
  for (const auto& poolType : defaultTypePool())
    for (int d = 0; d <= 2; ++d) {
      CAPTURE(printType(poolType));
      CHECK(memberTest(Term::var("freshvar"), poolType, d));
    }
}

TEST_CASE("member_test examples") {
  CHECK(memberTest(tp("\\x:P. x"), ty("P -> P"), 2));
  CHECK(memberTest(tp("mu a:P. z"), ty("P"), 2));
  // the paper's closing term at bot -> P
  CHECK(memberTest(tp("\\z:bot. mu a:P. z"), ty("bot -> P"), 2));
}

TEST_CASE("member_test implies SN via the empty battery element") {
  TermPtr self = tp("\\x:P. x x");
  TermPtr loop = Term::app(self, ETerm::arg(self));
  CHECK_FALSE(isSn(loop, 500).known);
  CHECK_FALSE(memberTest(loop, ty("P"), 0, 500));
}

TEST_CASE("member_test survives reduction") {
  GenConfig cfg;
  cfg.sampleCount = 120;
  cfg.sampleMaxSize = 14;
  cfg.seed = 13;
  sampleTyped(cfg, [&](const Judgement& j) {
    if (!memberTest(j.term(), j.type(), 1)) {
      CAPTURE(printTerm(j.term()));
      CHECK(false);
      return;
    }
    for (const auto& u : reducts(j.term())) {
      CAPTURE(printTerm(j.term()));
      CAPTURE(printTerm(u));
      CHECK(memberTest(u, j.type(), 1));
    }
  });
}

TEST_CASE("adequation examples") {
  // a closed term with empty contexts at depth 0 reduces to plain SN
  Judgement closed = check({}, tp("\\x:P. x"), ty("P -> P"));
  CHECK(adequationCheck(closed, 0));

  Judgement paperTerm = check({}, tp("\\z:bot. mu a:P. z"), ty("bot -> P"));
  CHECK(adequationCheck(paperTerm, 2));

  Contexts c;
  c.gamma["x"] = ty("P");
  Judgement axiom = check(c, tp("x"), ty("P"));
  CHECK(adequationCheck(axiom, 2));
}

TEST_CASE("adequation on a small generated batch") {
  GenConfig cfg;
  cfg.sampleCount = 60;
  cfg.sampleMaxSize = 12;
  cfg.seed = 19;
  sampleTyped(cfg, [&](const Judgement& j) {
    CAPTURE(printTerm(j.term()));
    CHECK(adequationCheck(j, 1));
  });
}
