// Acceptance gate: one pass/fail line per criterion, nonzero exit if any
// fails. Thresholds are pinned here, not configurable:
//   corpus        exhaustive maxSize=8 plus 10,000 samples at maxSize=20
//   fuel          10^6 node expansions
//   battery depth 2
//   lemma suites  at least 2,000 instances each, zero failures
//   runtime       subject reduction must finish within 5 minutes

#include <chrono>
#include <cstdio>
#include <string>

#include "lmu/harness.hpp"
#include "oracle.hpp"

using namespace lmu;

namespace {

int failures = 0;

void criterion(int n, const std::string& what, bool pass,
               const std::string& detail = "") {
  std::printf("%s  criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", n,
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

GenConfig corpusConfig() {
  GenConfig cfg;
  cfg.maxSize = 8;
  cfg.sampleCount = 10000;
  cfg.sampleMaxSize = 20;
  cfg.seed = 42;
  cfg.depth = 2;
  cfg.fuel = 1000000;
  return cfg;
}

std::string caseCount(const SuiteReport& r) {
  return std::to_string(r.casesRun) + " cases, " +
         std::to_string(r.failures.size()) + " failures, " +
         std::to_string(r.runtimeMillis) + " ms";
}

}  // namespace

int main() {
  const GenConfig corpus = corpusConfig();

  // 1. subject reduction: every one-step reduct re-typechecks at the same type
  {
    SuiteReport r = runSuite("subject_reduction", corpus);
    bool pass = r.passed() && r.runtimeMillis <= 5 * 60 * 1000;
    criterion(1, "subject reduction over the full corpus", pass, caseCount(r));
  }

  // 2. strong normalization with full redex-kind coverage
  {
    SuiteReport r = runSuite("strong_normalization", corpus);
    std::string cov;
    for (const auto& [fam, count] : r.coverage)
      cov += fam + "=" + std::to_string(count) + " ";
    criterion(2, "strong normalization within fuel, all five redex kinds",
              r.passed(), caseCount(r) + "; coverage " + cov);
  }

  // 3. confluence: exhaustive graphs at maxSize=8 have exactly one normal form
  {
    GenConfig cfg = corpus;
    cfg.sampleCount = 0;
    SuiteReport r = runSuite("confluence", cfg);
    criterion(3, "confluence on the exhaustive corpus", r.passed(), caseCount(r));
  }

  // 4. lemma suites, at least 2000 instances each, zero failures
  {
    bool pass = true;
    std::string detail;
    for (const auto& name : {"substitution_lemma", "nice_preservation",
                             "int_lemma", "delta_lemma"}) {
      SuiteReport r = runSuite(name, corpus);
      bool ok = r.passed() && r.casesRun >= 2000;
      if (std::string(name) == "int_lemma") {
        for (const auto& item : {"item1", "item2", "item3", "item4", "item5"}) {
          auto it = r.details.find(item);
          ok = ok && it != r.details.end() && it->second >= 2000;
        }
      }
      pass = pass && ok;
      detail += std::string(name) + "=" + std::to_string(r.casesRun) +
                (ok ? " " : "(FAIL) ");
    }
    criterion(4, "substitution/nice/int/delta lemma suites", pass, detail);
  }

  // 5. battery invariants, variable and mu membership, closure suites
  {
    bool pass = true;
    std::string detail;
    for (const auto& ty : defaultTypePool()) {
      for (int d = 0; d <= 2; ++d) {
        const Battery& b = battery(ty, d);
        bool hasEmpty = false;
        for (const auto& w : b.seqs) {
          if (w.empty()) hasEmpty = true;
          if (!isNice(w)) pass = false;
          for (const auto& e : w)
            if (!isSn(e, corpus.fuel).known) pass = false;
        }
        if (!hasEmpty) pass = false;
        if (d > 0) {
          const Battery& prev = battery(ty, d - 1);
          for (const auto& w : prev.seqs) {
            bool found = false;
            for (const auto& w2 : b.seqs)
              if (alphaEqSeq(w, w2)) found = true;
            if (!found) pass = false;
          }
        }
        if (!memberTest(Term::var("v"), ty, d, corpus.fuel)) pass = false;
      }
      if (!memberTest(Term::mu("a", ty, Term::var("z")), ty, 2, corpus.fuel))
        pass = false;
    }
    if (!pass) detail = "battery invariant or membership check failed; ";
    SuiteReport closure = runSuite("candidate_closure", corpus);
    SuiteReport muN = runSuite("mu_N", corpus);
    pass = pass && closure.passed() && muN.passed();
    detail += "candidate_closure=" + std::to_string(closure.casesRun) +
              ", mu_N=" + std::to_string(muN.casesRun);
    criterion(5, "battery invariants and candidate membership", pass, detail);
  }

  // 6. adequation at depth 2 over the exhaustive corpus, plus the closing
  // example at bot -> P
  {
    GenConfig cfg = corpus;
    cfg.sampleCount = 0;
    SuiteReport r = runSuite("adequation", cfg);
    bool witness = memberTest(parseTerm("\\z:bot. mu a:P. z"),
                              parseType("bot -> P"), 2, corpus.fuel);
    criterion(6, "adequation on the exhaustive corpus and the bot->P witness",
              r.passed() && witness, caseCount(r));
  }

  // 7. the naive oracle checker agrees with infer on the full corpus
  {
    std::uint64_t cases = 0, disagreements = 0;
    auto compare = [&](const Judgement& j) {
      ++cases;
      auto oracle = testing::oracleInfer(j.ctx().gamma, j.ctx().delta, j.term());
      if (!oracle || !typeEq(*oracle, j.type())) ++disagreements;
    };
    enumerateTyped(corpus, compare);
    sampleTyped(corpus, compare);
    criterion(7, "oracle cross-check", disagreements == 0,
              std::to_string(cases) + " cases, " +
                  std::to_string(disagreements) + " disagreements");
  }

  // 8. determinism of `suite --name all` modulo timing
  {
    GenConfig cfg;
    cfg.maxSize = 6;
    cfg.sampleCount = 300;
    cfg.sampleMaxSize = 16;
    cfg.seed = 42;
    cfg.depth = 2;
    auto runAll = [&]() {
      std::vector<SuiteReport> rs;
      for (const auto& name : suiteNames()) {
        SuiteReport r = runSuite(name, cfg);
        r.runtimeMillis = 0;
        rs.push_back(std::move(r));
      }
      return reportsToJson(rs);
    };
    std::string first = runAll();
    std::string second = runAll();
    criterion(8, "identical reports for identical seeds", first == second);
  }

  return failures == 0 ? 0 : 1;
}
