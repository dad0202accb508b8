#pragma once

// Term generation (exhaustive and typing-directed random) plus the property
// suites that operationalize the theorems and lemmas at desk scale.

#include <functional>

#include "lmu/candidates.hpp"

namespace lmu {

struct GenConfig {
  int maxSize = 8;            // exhaustive enumeration bound (nodes, annotations counted)
  std::uint64_t seed = 42;
  int sampleCount = 0;        // random judgements on top of the enumeration
  int sampleMaxSize = 20;     // size budget for sampled terms
  std::vector<TypePtr> typePool;  // defaults to defaultTypePool() when empty
  int depth = 2;              // battery depth, capped at 3
  std::uint64_t fuel = kDefaultFuel;
};

/// P, Q, bot, P->Q, P/\Q, P\/Q, ((P->bot)->bot)->P: forces every typing rule
/// and every reduction kind to appear across the corpus.
std::vector<TypePtr> defaultTypePool();

struct GenerationStuck : Error {
  using Error::Error;
};

struct SuiteFailure {
  std::string what;
  std::string term;
  std::string type;
  std::string counterexample;  // minimized form, when shrinking applies
};

struct SuiteReport {
  std::string suiteName;
  std::string header;  // context scheme and config, for reproducibility
  std::uint64_t casesRun = 0;
  std::map<std::string, std::uint64_t> coverage;  // redex family -> count
  std::map<std::string, std::uint64_t> details;   // per-suite counters
  std::vector<SuiteFailure> failures;
  std::uint64_t runtimeMillis = 0;

  bool passed() const { return failures.empty(); }
  std::string toJson() const;  // stable field order
};

std::string reportsToJson(const std::vector<SuiteReport>& reports);

/// The fixed enumeration context scheme {x1:T1, x2:T2 ; a1:S1} drawn from the
/// type pool.
Contexts harnessContexts(const GenConfig& cfg);

/// Every well-typed term (up to alpha) over the pool and the fixed context
/// scheme with size <= maxSize, with its judgement, in a deterministic order.
void enumerateTyped(const GenConfig& cfg,
                    const std::function<void(const Judgement&)>& fn);

/// Typing-rule-directed random generation, reproducible from the seed; every
/// emitted judgement is re-validated by infer before delivery.
void sampleTyped(const GenConfig& cfg,
                 const std::function<void(const Judgement&)>& fn);

/// Greedy counterexample minimization: replaces subterms by same-typed
/// variables in scope while the predicate keeps holding; the result checks at
/// the original type. Suites call this on failing judgements.
Judgement shrinkJudgement(const Judgement& j,
                          const std::function<bool(const Judgement&)>& stillFails);

const std::vector<std::string>& suiteNames();

/// Runs one property suite over enumerateTyped + sampleTyped. Failures are
/// data, not errors; determinism: identical cfg gives identical reports
/// modulo runtimeMillis.
SuiteReport runSuite(const std::string& name, const GenConfig& cfg);

}  // namespace lmu
