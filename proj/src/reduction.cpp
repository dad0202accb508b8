#include "lmu/reduction.hpp"

#include <deque>
#include <mutex>
#include <random>
#include <unordered_map>

namespace lmu {

const char* redexKindName(RedexKind k) {
  switch (k) {
    case RedexKind::Beta: return "beta";
    case RedexKind::ProjPair1: return "proj_pair_1";
    case RedexKind::ProjPair2: return "proj_pair_2";
    case RedexKind::CaseInj1: return "case_inj_1";
    case RedexKind::CaseInj2: return "case_inj_2";
    case RedexKind::Permutative: return "permutative";
    case RedexKind::Classical: return "classical";
  }
  return "?";
}

namespace {

bool redexKindAt(const TermPtr& t, RedexKind& out) {
  if (t->kind() != Term::Kind::App) return false;
  const TermPtr& h = t->head();
  const ETermPtr& e = t->arg();
  switch (h->kind()) {
    case Term::Kind::Lam:
      if (e->kind() == ETerm::Kind::Arg) {
        out = RedexKind::Beta;
        return true;
      }
      return false;
    case Term::Kind::Pair:
      if (e->kind() == ETerm::Kind::Proj1) {
        out = RedexKind::ProjPair1;
        return true;
      }
      if (e->kind() == ETerm::Kind::Proj2) {
        out = RedexKind::ProjPair2;
        return true;
      }
      return false;
    case Term::Kind::Inl:
      if (e->kind() == ETerm::Kind::Case) {
        out = RedexKind::CaseInj1;
        return true;
      }
      return false;
    case Term::Kind::Inr:
      if (e->kind() == ETerm::Kind::Case) {
        out = RedexKind::CaseInj2;
        return true;
      }
      return false;
    case Term::Kind::App:
      if (h->arg()->kind() == ETerm::Kind::Case) {
        out = RedexKind::Permutative;
        return true;
      }
      return false;
    case Term::Kind::Mu:
      out = RedexKind::Classical;
      return true;
    default:
      return false;
  }
}

void collectRedexes(const TermPtr& t, std::vector<int>& path,
                    std::vector<ReductionStep>& out) {
  RedexKind k;
  if (redexKindAt(t, k)) out.push_back({path, k});
  switch (t->kind()) {
    case Term::Kind::Var:
      return;
    case Term::Kind::Lam:
    case Term::Kind::Inl:
    case Term::Kind::Inr:
    case Term::Kind::Mu:
    case Term::Kind::Named:
      path.push_back(0);
      collectRedexes(t->body(), path, out);
      path.pop_back();
      return;
    case Term::Kind::Pair:
      path.push_back(0);
      collectRedexes(t->fst(), path, out);
      path.back() = 1;
      collectRedexes(t->snd(), path, out);
      path.pop_back();
      return;
    case Term::Kind::App: {
      path.push_back(0);
      collectRedexes(t->head(), path, out);
      const ETermPtr& e = t->arg();
      switch (e->kind()) {
        case ETerm::Kind::Arg:
          path.back() = 1;
          collectRedexes(e->term(), path, out);
          break;
        case ETerm::Kind::Proj1:
        case ETerm::Kind::Proj2:
          break;
        case ETerm::Kind::Case:
          path.back() = 1;
          collectRedexes(e->left(), path, out);
          path.back() = 2;
          collectRedexes(e->right(), path, out);
          break;
      }
      path.pop_back();
      return;
    }
  }
}

// Contractum of the redex at the root of t.
StepOutcome contract(const TermPtr& t, RedexKind kind) {
  RedexKind actual;
  if (!redexKindAt(t, actual) || actual != kind)
    throw InvalidStep("stale step: term shape does not match " +
                      std::string(redexKindName(kind)));
  const TermPtr& h = t->head();
  const ETermPtr& e = t->arg();
  switch (kind) {
    case RedexKind::Beta:
      return {subst(h->body(), h->name(), e->term()), false};
    case RedexKind::ProjPair1:
      return {h->fst(), false};
    case RedexKind::ProjPair2:
      return {h->snd(), false};
    case RedexKind::CaseInj1:
      return {subst(e->left(), e->leftName(), h->body()), false};
    case RedexKind::CaseInj2:
      return {subst(e->right(), e->rightName(), h->body()), false};
    case RedexKind::Permutative: {
      const ETermPtr& frame = h->arg();  // the case frame being pushed out
      bool stale = false;
      TypePtr newAnn;
      try {
        newAnn = elimType(frame->ann(), e);
      } catch (const ElimMismatchError&) {
        newAnn = frame->ann();
        stale = true;
      }
      auto fvArg = freeLamVars(e);
      std::string ln = frame->leftName();
      TermPtr lb = frame->left();
      if (fvArg.count(ln)) {
        std::set<std::string> avoid = fvArg;
        auto names = allLamNames(lb);
        avoid.insert(names.begin(), names.end());
        std::string fresh = freshName(ln, avoid);
        lb = subst(lb, ln, Term::var(fresh));
        ln = fresh;
      }
      std::string rn = frame->rightName();
      TermPtr rb = frame->right();
      if (fvArg.count(rn)) {
        std::set<std::string> avoid = fvArg;
        auto names = allLamNames(rb);
        avoid.insert(names.begin(), names.end());
        std::string fresh = freshName(rn, avoid);
        rb = subst(rb, rn, Term::var(fresh));
        rn = fresh;
      }
      ETermPtr pushed = ETerm::caseOf(newAnn, ln, Term::app(lb, e), rn,
                                      Term::app(rb, e));
      return {Term::app(h->head(), pushed), stale};
    }
    case RedexKind::Classical: {
      bool stale = false;
      TypePtr newAnn;
      try {
        newAnn = elimType(h->ann(), e);
      } catch (const ElimMismatchError&) {
        newAnn = h->ann();
        stale = true;
      }
      std::string a = h->name();
      TermPtr body = h->body();
      auto fmvArg = freeMuVars(e);
      if (fmvArg.count(a)) {
        std::set<std::string> avoid = fmvArg;
        auto names = allMuNames(body);
        avoid.insert(names.begin(), names.end());
        std::string fresh = freshName(a, avoid);
        body = renameMuVar(body, a, fresh);
        a = fresh;
      }
      return {Term::mu(a, newAnn, structSubst(body, a, e)), stale};
    }
  }
  throw InvalidStep("unreachable redex kind");
}

StepOutcome stepAt(const TermPtr& t, const std::vector<int>& path, std::size_t i,
                   RedexKind kind) {
  if (i == path.size()) return contract(t, kind);
  int idx = path[i];
  auto bad = [&]() -> InvalidStep {
    return InvalidStep("stale step: no child " + std::to_string(idx) + " at " +
                       pathString({path.begin(), path.begin() + i}));
  };
  switch (t->kind()) {
    case Term::Kind::Var:
      throw bad();
    case Term::Kind::Lam: {
      if (idx != 0) throw bad();
      auto sub = stepAt(t->body(), path, i + 1, kind);
      return {Term::lam(t->name(), t->ann(), sub.term), sub.annotationsStale};
    }
    case Term::Kind::Inl: {
      if (idx != 0) throw bad();
      auto sub = stepAt(t->body(), path, i + 1, kind);
      return {Term::inl(t->ann(), sub.term), sub.annotationsStale};
    }
    case Term::Kind::Inr: {
      if (idx != 0) throw bad();
      auto sub = stepAt(t->body(), path, i + 1, kind);
      return {Term::inr(t->ann(), sub.term), sub.annotationsStale};
    }
    case Term::Kind::Mu: {
      if (idx != 0) throw bad();
      auto sub = stepAt(t->body(), path, i + 1, kind);
      return {Term::mu(t->name(), t->ann(), sub.term), sub.annotationsStale};
    }
    case Term::Kind::Named: {
      if (idx != 0) throw bad();
      auto sub = stepAt(t->body(), path, i + 1, kind);
      return {Term::named(t->name(), sub.term), sub.annotationsStale};
    }
    case Term::Kind::Pair: {
      if (idx == 0) {
        auto sub = stepAt(t->fst(), path, i + 1, kind);
        return {Term::pair(sub.term, t->snd()), sub.annotationsStale};
      }
      if (idx == 1) {
        auto sub = stepAt(t->snd(), path, i + 1, kind);
        return {Term::pair(t->fst(), sub.term), sub.annotationsStale};
      }
      throw bad();
    }
    case Term::Kind::App: {
      if (idx == 0) {
        auto sub = stepAt(t->head(), path, i + 1, kind);
        return {Term::app(sub.term, t->arg()), sub.annotationsStale};
      }
      const ETermPtr& e = t->arg();
      if (e->kind() == ETerm::Kind::Arg && idx == 1) {
        auto sub = stepAt(e->term(), path, i + 1, kind);
        return {Term::app(t->head(), ETerm::arg(sub.term)), sub.annotationsStale};
      }
      if (e->kind() == ETerm::Kind::Case && (idx == 1 || idx == 2)) {
        if (idx == 1) {
          auto sub = stepAt(e->left(), path, i + 1, kind);
          return {Term::app(t->head(),
                            ETerm::caseOf(e->ann(), e->leftName(), sub.term,
                                          e->rightName(), e->right())),
                  sub.annotationsStale};
        }
        auto sub = stepAt(e->right(), path, i + 1, kind);
        return {Term::app(t->head(),
                          ETerm::caseOf(e->ann(), e->leftName(), e->left(),
                                        e->rightName(), sub.term)),
                sub.annotationsStale};
      }
      throw bad();
    }
  }
  throw bad();
}

// ---------------------------------------------------------------------------
// Shared memo tables, keyed by alpha-canonical forms.

struct ExpandedNode {
  std::vector<std::pair<ReductionStep, TermPtr>> reducts;  // canonical targets
  bool stale = false;
};

// Terms above this size are overwhelmingly one-shot (substituted instances in
// the candidate suites); caching them only burns memory. The entry caps are a
// backstop: dropping a cache never changes results, only cost.
constexpr int kCacheTermSizeLimit = 24;
constexpr std::size_t kCacheMaxEntries = 200'000;

struct Caches {
  std::mutex mu;
  std::unordered_map<TermPtr, ExpandedNode, TermHash, TermStructEq> expand;
  std::unordered_map<TermPtr, SnResult, TermHash, TermStructEq> sn;
};

Caches& caches() {
  static Caches c;
  return c;
}

ExpandedNode computeExpansion(const TermPtr& canon) {
  ExpandedNode node;
  std::unordered_map<TermPtr, bool, TermHash, TermStructEq> seen;
  for (const auto& s : redexes(canon)) {
    StepOutcome out = stepAt(canon, s.path, 0, s.kind);
    node.stale |= out.annotationsStale;
    TermPtr target = alphaCanonical(out.term);
    if (seen.emplace(target, true).second)
      node.reducts.emplace_back(s, std::move(target));
  }
  return node;
}

// Reducts of a canonical term, canonicalized and deduplicated; memoized for
// small terms. `scratch` holds the result when the cache is bypassed.
const ExpandedNode& expandNode(const TermPtr& canon, ExpandedNode& scratch) {
  if (canon->size() > kCacheTermSizeLimit) {
    scratch = computeExpansion(canon);
    return scratch;
  }
  auto& c = caches();
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.expand.find(canon);
    if (it != c.expand.end()) return it->second;
  }
  ExpandedNode node = computeExpansion(canon);
  std::lock_guard<std::mutex> lock(c.mu);
  if (c.expand.size() >= kCacheMaxEntries) c.expand.clear();
  return c.expand.emplace(canon, std::move(node)).first->second;
}

}  // namespace

std::vector<ReductionStep> redexes(const TermPtr& t) {
  std::vector<ReductionStep> out;
  std::vector<int> path;
  collectRedexes(t, path, out);
  return out;
}

StepOutcome stepChecked(const TermPtr& t, const ReductionStep& s) {
  return stepAt(t, s.path, 0, s.kind);
}

TermPtr step(const TermPtr& t, const ReductionStep& s) {
  return stepAt(t, s.path, 0, s.kind).term;
}

std::vector<TermPtr> reducts(const TermPtr& t) {
  std::vector<TermPtr> out;
  std::unordered_map<TermPtr, bool, TermHash, TermStructEq> seen;
  for (const auto& s : redexes(t)) {
    TermPtr u = step(t, s);
    if (seen.emplace(alphaCanonical(u), true).second) out.push_back(u);
  }
  return out;
}

std::vector<ETermPtr> reducts(const ETermPtr& e) {
  std::vector<ETermPtr> out;
  switch (e->kind()) {
    case ETerm::Kind::Arg:
      for (const auto& u : reducts(e->term())) out.push_back(ETerm::arg(u));
      break;
    case ETerm::Kind::Proj1:
    case ETerm::Kind::Proj2:
      break;
    case ETerm::Kind::Case:
      for (const auto& u : reducts(e->left()))
        out.push_back(
            ETerm::caseOf(e->ann(), e->leftName(), u, e->rightName(), e->right()));
      for (const auto& u : reducts(e->right()))
        out.push_back(
            ETerm::caseOf(e->ann(), e->leftName(), e->left(), e->rightName(), u));
      break;
  }
  return out;
}

std::vector<std::size_t> ReductionGraph::normalFormIds() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (edges[i].empty()) out.push_back(i);
  return out;
}

ReductionGraph buildGraph(const TermPtr& t, std::uint64_t fuel) {
  ReductionGraph g;
  g.root = alphaCanonical(t);
  std::unordered_map<TermPtr, std::size_t, TermHash, TermStructEq> index;
  g.nodes.push_back(g.root);
  index.emplace(g.root, 0);
  g.edges.emplace_back();
  std::deque<std::size_t> frontier{0};
  std::uint64_t expansions = 0;
  ExpandedNode scratch;
  while (!frontier.empty()) {
    // fuel bounds expansions and stored nodes alike, so it is a genuine
    // resource bound rather than a pure step count
    if (expansions >= fuel || g.nodes.size() >= fuel) {
      g.complete = false;
      return g;
    }
    ++expansions;
    std::size_t n = frontier.front();
    frontier.pop_front();
    const ExpandedNode& ex = expandNode(g.nodes[n], scratch);
    g.annotationsStale |= ex.stale;
    for (const auto& [s, target] : ex.reducts) {
      auto [it, fresh] = index.emplace(target, g.nodes.size());
      if (fresh) {
        g.nodes.push_back(target);
        g.edges.emplace_back();
        frontier.push_back(it->second);
      }
      g.edges[n].emplace_back(s, it->second);
    }
  }
  // cycle check (iterative, graphs can be deep)
  std::vector<int> color(g.nodes.size(), 0);
  for (std::size_t start = 0; start < g.nodes.size() && !g.hasCycle; ++start) {
    if (color[start]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    color[start] = 1;
    while (!stack.empty()) {
      auto& [n, next] = stack.back();
      if (next < g.edges[n].size()) {
        std::size_t m = g.edges[n][next++].second;
        if (color[m] == 1) {
          g.hasCycle = true;
          break;
        }
        if (color[m] == 0) {
          color[m] = 1;
          stack.emplace_back(m, 0);
        }
      } else {
        color[n] = 2;
        stack.pop_back();
      }
    }
  }
  return g;
}

SnResult isSn(const TermPtr& t, std::uint64_t fuel) {
  TermPtr canon = alphaCanonical(t);
  bool cacheable = canon->size() <= kCacheTermSizeLimit;
  auto& c = caches();
  if (cacheable) {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.sn.find(canon);
    if (it != c.sn.end()) return it->second;
  }
  ReductionGraph g = buildGraph(canon, fuel);
  if (!g.complete) return {};  // Unknown, not cached: more fuel may settle it
  if (g.hasCycle) {
    SnResult r{};  // proven divergent, permanently Unknown
    if (cacheable) {
      std::lock_guard<std::mutex> lock(c.mu);
      if (c.sn.size() >= kCacheMaxEntries) c.sn.clear();
      c.sn.emplace(canon, r);
    }
    return r;
  }
  // longest path by iterative post-order DP
  std::vector<std::uint64_t> etaOf(g.nodes.size(), 0);
  std::vector<int> state(g.nodes.size(), 0);
  for (std::size_t start = 0; start < g.nodes.size(); ++start) {
    if (state[start]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    state[start] = 1;
    while (!stack.empty()) {
      auto& [n, next] = stack.back();
      if (next < g.edges[n].size()) {
        std::size_t m = g.edges[n][next++].second;
        if (!state[m]) {
          state[m] = 1;
          stack.emplace_back(m, 0);
        }
      } else {
        std::uint64_t best = 0;
        for (const auto& [s, m] : g.edges[n]) {
          (void)s;
          if (etaOf[m] + 1 > best) best = etaOf[m] + 1;
        }
        etaOf[n] = best;
        state[n] = 2;
        stack.pop_back();
      }
    }
  }
  SnResult r{true, g.nodes.size(), etaOf[0]};
  if (cacheable) {
    std::lock_guard<std::mutex> lock(c.mu);
    if (c.sn.size() >= kCacheMaxEntries) c.sn.clear();
    c.sn.emplace(canon, r);
  }
  return r;
}

namespace {

// (z e) for a variable z has exactly the internal redexes of e, so E-terms
// reduce through this embedding.
TermPtr embedETerm(const ETermPtr& e) {
  return Term::app(Term::var("#e"), e);
}

}  // namespace

SnResult isSn(const ETermPtr& e, std::uint64_t fuel) {
  return isSn(embedETerm(e), fuel);
}

std::uint64_t eta(const TermPtr& t, std::uint64_t fuel) {
  SnResult r = isSn(t, fuel);
  if (!r.known) throw FuelExhausted(fuel, "eta of a possibly divergent term");
  return r.eta;
}

std::uint64_t eta(const ETermPtr& e, std::uint64_t fuel) {
  SnResult r = isSn(e, fuel);
  if (!r.known) throw FuelExhausted(fuel, "eta of a possibly divergent E-term");
  return r.eta;
}

std::uint64_t etaSeq(const Seq& w, std::uint64_t fuel) {
  std::uint64_t sum = 0;
  for (const auto& e : w) sum += eta(e, fuel);
  return sum;
}

NormalizeResult normalize(const TermPtr& t, Strategy strategy, std::uint64_t fuel,
                          std::uint64_t seed) {
  if (strategy == Strategy::Exhaustive) {
    ReductionGraph g = buildGraph(t, fuel);
    if (!g.complete || g.hasCycle)
      throw FuelExhausted(fuel, "exhaustive normalization did not terminate");
    auto nfs = g.normalFormIds();
    if (nfs.size() != 1)
      throw Error("confluence violation: " + std::to_string(nfs.size()) +
                  " distinct normal forms from " + printTerm(t));
  }
  std::mt19937_64 rng(seed);
  NormalizeResult res;
  TermPtr cur = t;
  std::uint64_t steps = 0;
  for (;;) {
    auto rs = redexes(cur);
    if (rs.empty()) break;
    if (steps++ >= fuel) throw FuelExhausted(fuel, "normalization");
    std::size_t pick = 0;
    if (strategy == Strategy::Random) pick = rng() % rs.size();
    StepOutcome out = stepChecked(cur, rs[pick]);
    res.annotationsStale |= out.annotationsStale;
    res.trace.push_back({rs[pick], out.term});
    cur = out.term;
  }
  res.normalForm = cur;
  return res;
}

std::string formatTraceEntry(const TraceEntry& e) {
  return pathString(e.step.path) + " " + redexKindName(e.step.kind) + " : " +
         printTerm(e.after);
}

void clearReductionCaches() {
  auto& c = caches();
  std::lock_guard<std::mutex> lock(c.mu);
  c.expand.clear();
  c.sn.clear();
}

}  // namespace lmu
