#pragma once

// Cut elimination: redex discovery, one-step reduction, reduction graphs over
// alpha-classes, normal forms, eta (longest reduction sequence) and SN checks.

#include <cstdint>
#include <utility>

#include "lmu/syntax.hpp"
#include "lmu/typing.hpp"

namespace lmu {

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

/// The five rule schemata: the three logical cuts (beta, pair projection,
/// case on an injection), the permutative cut (case frame pushed through a
/// following elimination) and the classical cut (mu consuming an elimination
/// via structural substitution).
enum class RedexKind {
  Beta,
  ProjPair1,
  ProjPair2,
  CaseInj1,
  CaseInj2,
  Permutative,
  Classical,
};

const char* redexKindName(RedexKind k);

/// A redex position: child indices from the root down to an App node whose
/// (head, arg) shape matches `kind`. Child indexing: body/head/fst = 0,
/// snd = 1, App argument term = 1, case branches = 1 (left) and 2 (right).
struct ReductionStep {
  std::vector<int> path;
  RedexKind kind;
};

struct InvalidStep : Error {
  using Error::Error;
};

struct FuelExhausted : Error {
  std::uint64_t fuel;
  explicit FuelExhausted(std::uint64_t f, const std::string& what = "fuel exhausted")
      : Error(what + " (fuel " + std::to_string(f) + ")"), fuel(f) {}
};

/// Every redex position, pre-order = lexicographic path order, so the first
/// entry is the leftmost-outermost redex.
std::vector<ReductionStep> redexes(const TermPtr& t);

/// One-step reduction at a given redex. Classical re-annotates the mu binder
/// and Permutative the case frame via elimType; on untyped terms where
/// elimType fails the old annotation is kept and the outcome is flagged
/// stale, which excludes the term from typing suites.
struct StepOutcome {
  TermPtr term;
  bool annotationsStale = false;
};
StepOutcome stepChecked(const TermPtr& t, const ReductionStep& s);
TermPtr step(const TermPtr& t, const ReductionStep& s);

/// All one-step reducts up to alpha, deterministic order; empty iff normal.
std::vector<TermPtr> reducts(const TermPtr& t);
std::vector<ETermPtr> reducts(const ETermPtr& e);

/// The full reduction graph over alpha-canonical terms. Finite and acyclic
/// for typed roots; construction stops (complete=false) when `fuel` node
/// expansions are spent.
struct ReductionGraph {
  TermPtr root;  // canonical form
  std::vector<TermPtr> nodes;
  std::vector<std::vector<std::pair<ReductionStep, std::size_t>>> edges;
  bool complete = true;
  bool hasCycle = false;  // meaningful only when complete
  bool annotationsStale = false;

  // edgeless node ids; normal forms only when the graph is complete
  std::vector<std::size_t> normalFormIds() const;
};

ReductionGraph buildGraph(const TermPtr& t, std::uint64_t fuel = kDefaultFuel);

/// known=false is Unknown: fuel ran out, or a cycle proves divergence.
/// Never a false SN.
struct SnResult {
  bool known = false;
  std::size_t graphSize = 0;
  std::uint64_t eta = 0;
};

SnResult isSn(const TermPtr& t, std::uint64_t fuel = kDefaultFuel);
SnResult isSn(const ETermPtr& e, std::uint64_t fuel = kDefaultFuel);

/// Longest reduction sequence length; memoized over alpha-classes. Extended
/// to E-terms (projections have eta 0, case frames reduce inside branches)
/// and to sequences elementwise.
std::uint64_t eta(const TermPtr& t, std::uint64_t fuel = kDefaultFuel);
std::uint64_t eta(const ETermPtr& e, std::uint64_t fuel = kDefaultFuel);
std::uint64_t etaSeq(const Seq& w, std::uint64_t fuel = kDefaultFuel);

enum class Strategy { LeftmostOutermost, Random, Exhaustive };

struct TraceEntry {
  ReductionStep step;
  TermPtr after;
};

struct NormalizeResult {
  TermPtr normalForm;
  std::vector<TraceEntry> trace;
  bool annotationsStale = false;
};

/// Reduce to a normal form. Exhaustive additionally builds the full graph
/// and checks that exactly one normal form (up to alpha) is reachable.
NormalizeResult normalize(const TermPtr& t, Strategy strategy,
                          std::uint64_t fuel = kDefaultFuel, std::uint64_t seed = 0);

/// "<path as dot-separated indices> <kind> : <printed term after step>";
/// the root path prints as "-".
std::string formatTraceEntry(const TraceEntry& e);

/// Drop the shared reducts/eta memo tables (results never change; this only
/// bounds memory in long runs).
void clearReductionCaches();

}  // namespace lmu
