#pragma once

// Executable finite approximation of the reducibility-candidate machinery:
// batteries under-approximate the dual set of the interpretation of a type,
// giving a necessary membership condition that is testable by SN checks.

#include "lmu/reduction.hpp"

namespace lmu {

/// Candidate sets a propositional variable can denote. Only the SN set is
/// supported; batteries encode exactly this interpretation (base types get
/// the trivial spine set).
enum class CandidateMarker { SnSet };

/// Assignment of candidate sets to propositional variables. Total by
/// construction: every variable maps to the SN set.
struct Interpretation {
  CandidateMarker operator()(const std::string& propVar) const {
    (void)propVar;
    return CandidateMarker::SnSet;
  }
};

/// A finite set of nice sequences approximating the elimination spines a
/// member of the candidate at `type` must survive. The empty sequence is
/// always present, every sequence is nice, every element SN.
struct Battery {
  TypePtr type;
  int depth = 0;
  std::vector<Seq> seqs;  // sorted by (length, printed form); empty first
};

/// Memoized per (type, depth). Construction mirrors the candidate
/// characterization per connective, truncated at `depth`; batteries are
/// monotone in depth (battery(T,d).seqs is a subset of battery(T,d+1).seqs).
const Battery& battery(const TypePtr& type, int depth);

/// A finite sample of the candidate at `type`: a fixed free variable, mu
/// abstractions over a small pool of SN bodies with the bound name not free,
/// and closed introduction-only inhabitants up to a depth-bounded size.
const std::vector<TermPtr>& inhabitants(const TypePtr& type, int depth);

/// True iff (t w) is SN for every battery sequence w. A necessary condition
/// for candidate membership, not a sufficient one; Unknown SN verdicts count
/// as failure.
bool memberTest(const TermPtr& t, const TypePtr& type, int depth,
                std::uint64_t fuel = kDefaultFuel);

/// Cap on the assignment combinations adequationCheck explores, product
/// iterated rightmost-fastest over (sorted gamma, sorted delta).
inline constexpr int kMaxAssignments = 64;

/// For every capped assignment of inhabitants to gamma-variables and battery
/// sequences to delta-variables, the substituted term passes memberTest at
/// the judgement type.
bool adequationCheck(const Judgement& j, int depth,
                     std::uint64_t fuel = kDefaultFuel);

}  // namespace lmu
