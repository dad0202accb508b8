#include <doctest.h>

#include "lmu/harness.hpp"

using namespace lmu;

namespace {

TermPtr tp(const std::string& s) { return parseTerm(s); }

std::uint64_t countEnumerated(int maxSize) {
  GenConfig cfg;
  cfg.maxSize = maxSize;
  std::uint64_t n = 0;
  enumerateTyped(cfg, [&](const Judgement&) { ++n; });
  return n;
}

}  // namespace

TEST_CASE("enumeration at size 1 is exactly the axiom instances") {
  GenConfig cfg;
  cfg.maxSize = 1;
  std::vector<Judgement> out;
  enumerateTyped(cfg, [&](const Judgement& j) { out.push_back(j); });
  // the scheme has two lambda-variables; mu-variables are not terms
  REQUIRE_EQ(out.size(), 2);
  for (const auto& j : out) CHECK_EQ(j.term()->kind(), Term::Kind::Var);
}

TEST_CASE("enumeration counts are deterministic and monotone") {
  CHECK_EQ(countEnumerated(1), 2);
  CHECK_EQ(countEnumerated(2), 3);
  CHECK_EQ(countEnumerated(3), 29);
  CHECK_EQ(countEnumerated(5), 464);
  CHECK(countEnumerated(4) > countEnumerated(3));
}

TEST_CASE("enumeration includes the identity at size 3") {
  GenConfig cfg;
  cfg.maxSize = 3;
  bool found = false;
  enumerateTyped(cfg, [&](const Judgement& j) {
    if (alphaEq(j.term(), tp("\\x:P. x"))) found = true;
  });
  CHECK(found);
}

TEST_CASE("enumerated terms respect the size bound and have no alpha-duplicates") {
  GenConfig cfg;
  cfg.maxSize = 6;
  std::set<std::string> seen;
  enumerateTyped(cfg, [&](const Judgement& j) {
    CHECK(j.term()->size() <= 6);
    std::string canon = printTerm(alphaCanonical(j.term()));
    CHECK(seen.insert(canon).second);
  });
}

TEST_CASE("sampling is reproducible from the seed") {
  auto render = [](std::uint64_t seed) {
    GenConfig cfg;
    cfg.sampleCount = 60;
    cfg.sampleMaxSize = 15;
    cfg.seed = seed;
    std::string acc;
    sampleTyped(cfg, [&](const Judgement& j) {
      acc += printTerm(j.term());
      acc += '\n';
    });
    return acc;
  };
  CHECK_EQ(render(42), render(42));
  CHECK_NE(render(42), render(43));
}

TEST_CASE("samples respect the size budget") {
  GenConfig cfg;
  cfg.sampleCount = 200;
  cfg.sampleMaxSize = 12;
  cfg.seed = 4;
  sampleTyped(cfg, [&](const Judgement& j) {
    CHECK(j.term()->size() <= 12);
  });
}

TEST_CASE("samples exercise the classical constructs") {
  GenConfig cfg;
  cfg.sampleCount = 400;
  cfg.sampleMaxSize = 18;
  cfg.seed = 42;
  int mus = 0, named = 0;
  sampleTyped(cfg, [&](const Judgement& j) {
    for (const auto& n : {Term::Kind::Mu, Term::Kind::Named}) {
      std::function<int(const TermPtr&)> count = [&](const TermPtr& t) -> int {
        int c = t->kind() == n ? 1 : 0;
        switch (t->kind()) {
          case Term::Kind::Lam:
          case Term::Kind::Inl:
          case Term::Kind::Inr:
          case Term::Kind::Mu:
          case Term::Kind::Named:
            return c + count(t->body());
          case Term::Kind::Pair:
            return c + count(t->fst()) + count(t->snd());
          case Term::Kind::App: {
            int sub = count(t->head());
            const auto& e = t->arg();
            if (e->kind() == ETerm::Kind::Arg) sub += count(e->term());
            if (e->kind() == ETerm::Kind::Case)
              sub += count(e->left()) + count(e->right());
            return c + sub;
          }
          default:
            return c;
        }
      };
      (n == Term::Kind::Mu ? mus : named) += count(j.term());
    }
  });
  CHECK(mus > 0);
  CHECK(named > 0);
}

TEST_CASE("suite names are the documented ten") {
  CHECK_EQ(suiteNames().size(), 10);
  CHECK_THROWS_AS(runSuite("no_such_suite", {}), Error);
}

TEST_CASE("config validation") {
  GenConfig bad;
  bad.maxSize = 0;
  CHECK_THROWS_AS(runSuite("confluence", bad), Error);
  bad = {};
  bad.depth = 4;
  CHECK_THROWS_AS(runSuite("confluence", bad), Error);
}

TEST_CASE("small suite runs pass") {
  GenConfig cfg;
  cfg.maxSize = 5;
  cfg.sampleCount = 150;
  cfg.sampleMaxSize = 14;
  cfg.seed = 42;
  cfg.depth = 1;
  for (const auto& name : {"subject_reduction", "confluence", "substitution_lemma",
                           "nice_preservation", "delta_lemma"}) {
    SuiteReport r = runSuite(name, cfg);
    CAPTURE(name);
    CAPTURE(r.failures.empty() ? "" : r.failures[0].what);
    CHECK(r.passed());
    CHECK(r.casesRun > 0);
  }
}

TEST_CASE("strong normalization suite reports coverage and enforces it") {
  GenConfig cfg;
  cfg.maxSize = 6;
  cfg.sampleCount = 0;
  SuiteReport r = runSuite("strong_normalization", cfg);
  // at size 6 with no samples the permutative family cannot appear, so the
  // suite must flag exactly that as a coverage failure
  REQUIRE_FALSE(r.passed());
  bool coverageFailure = false;
  for (const auto& f : r.failures)
    if (f.what.find("CoverageError") != std::string::npos &&
        f.what.find("permutative") != std::string::npos)
      coverageFailure = true;
  CHECK(coverageFailure);
  CHECK(r.coverage.at("beta") > 0);
}

TEST_CASE("suite reports are deterministic modulo runtime") {
  GenConfig cfg;
  cfg.maxSize = 4;
  cfg.sampleCount = 40;
  cfg.sampleMaxSize = 12;
  cfg.seed = 7;
  cfg.depth = 1;
  auto strip = [](SuiteReport r) {
    r.runtimeMillis = 0;
    return r.toJson();
  };
  CHECK_EQ(strip(runSuite("int_lemma", cfg)), strip(runSuite("int_lemma", cfg)));
  CHECK_EQ(strip(runSuite("mu_N", cfg)), strip(runSuite("mu_N", cfg)));
}

TEST_CASE("suites accept a custom type pool") {
  GenConfig cfg;
  cfg.maxSize = 6;
  cfg.sampleCount = 120;
  cfg.sampleMaxSize = 14;
  cfg.seed = 21;
  TypePtr p = parseType("P");
  cfg.typePool = {p, parseType("P -> P"), parseType("P \\/ Q")};
  for (const auto& name : {"subject_reduction", "confluence"}) {
    SuiteReport r = runSuite(name, cfg);
    CAPTURE(name);
    CHECK(r.passed());
    CHECK(r.casesRun > 0);
    CHECK(r.header.find("P -> P") != std::string::npos);
  }
}

TEST_CASE("shrinking replaces subterms by same-typed variables in scope") {
  Contexts ctx;
  ctx.gamma["x1"] = parseType("P");
  // predicate: the term still contains an application
  auto hasApp = [](const Judgement& j) {
    std::function<bool(const TermPtr&)> walk = [&](const TermPtr& t) -> bool {
      switch (t->kind()) {
        case Term::Kind::App:
          return true;
        case Term::Kind::Lam:
        case Term::Kind::Inl:
        case Term::Kind::Inr:
        case Term::Kind::Mu:
        case Term::Kind::Named:
          return walk(t->body());
        case Term::Kind::Pair:
          return walk(t->fst()) || walk(t->snd());
        default:
          return false;
      }
    };
    return walk(j.term());
  };
  TermPtr big = parseTerm("(\\x3:P. x3) ((\\x4:P. x4) x1)");
  Judgement j = check(ctx, big, parseType("P"));
  Judgement shrunk = shrinkJudgement(j, hasApp);
  CHECK(hasApp(shrunk));
  CHECK(typeEq(shrunk.type(), j.type()));
  CHECK(shrunk.term()->size() < big->size());
  CHECK(alphaEq(shrunk.term(), parseTerm("(\\x3:P. x3) x1")));
}

TEST_CASE("report JSON has the stable field order") {
  GenConfig cfg;
  cfg.maxSize = 3;
  SuiteReport r = runSuite("confluence", cfg);
  std::string json = r.toJson();
  auto posSuite = json.find("\"suite\"");
  auto posHeader = json.find("\"header\"");
  auto posCases = json.find("\"cases_run\"");
  auto posCoverage = json.find("\"coverage\"");
  auto posFailures = json.find("\"failures\"");
  auto posRuntime = json.find("\"runtime_millis\"");
  CHECK(posSuite < posHeader);
  CHECK(posHeader < posCases);
  CHECK(posCases < posCoverage);
  CHECK(posCoverage < posFailures);
  CHECK(posFailures < posRuntime);
}
