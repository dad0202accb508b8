#include "lmu/candidates.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace lmu {

namespace {

// Fixed names for battery machinery. They never collide with generated
// corpus variables (x1, x2, a1, ...) and user collisions are harmless: the
// adequation path substitutes via substPar / structSubstSeq, which are
// capture-avoiding and simultaneous.
constexpr const char* kInhabitantVar = "hv";
constexpr const char* kBotVar = "bz";
constexpr const char* kMuBinder = "ba";
constexpr const char* kInnerMu = "bb";
constexpr const char* kCaseLeft = "cx";
constexpr const char* kCaseRight = "cy";
constexpr const char* kConstBranch = "cz";

Seq prepend(const ETermPtr& e, const Seq& rest) {
  Seq out;
  out.reserve(rest.size() + 1);
  out.push_back(e);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::string seqKey(const Seq& w) {
  std::string k = std::to_string(w.size());
  k += '|';
  for (const auto& e : w) {
    k += printETerm(alphaCanonical(e));
    k += ' ';
  }
  return k;
}

// Closed introduction-only inhabitants of `type` with at most `budget` nodes
// (annotations counted). Binders are numbered, so results are canonical.
void introClosed(const TypePtr& type, int budget,
                 std::vector<std::pair<std::string, TypePtr>>& env,
                 std::vector<TermPtr>& out) {
  if (budget < 1) return;
  for (const auto& [n, ty] : env)
    if (typeEq(ty, type)) out.push_back(Term::var(n));
  switch (type->kind()) {
    case Type::Kind::Arrow: {
      int bodyBudget = budget - 1 - type->left()->size();
      if (bodyBudget < 1) return;
      std::string x = "e" + std::to_string(env.size() + 1);
      env.emplace_back(x, type->left());
      std::vector<TermPtr> bodies;
      introClosed(type->right(), bodyBudget, env, bodies);
      env.pop_back();
      for (const auto& b : bodies) out.push_back(Term::lam(x, type->left(), b));
      return;
    }
    case Type::Kind::And: {
      for (int s1 = 1; s1 <= budget - 2; ++s1) {
        std::vector<TermPtr> ls, rs;
        introClosed(type->left(), s1, env, ls);
        if (ls.empty()) continue;
        introClosed(type->right(), budget - 1 - s1, env, rs);
        for (const auto& l : ls) {
          if (l->size() != s1) continue;
          for (const auto& r : rs)
            if (1 + l->size() + r->size() <= budget)
              out.push_back(Term::pair(l, r));
        }
      }
      return;
    }
    case Type::Kind::Or: {
      int lb = budget - 1 - type->right()->size();
      if (lb >= 1) {
        std::vector<TermPtr> ls;
        introClosed(type->left(), lb, env, ls);
        for (const auto& l : ls) out.push_back(Term::inl(type->right(), l));
      }
      int rb = budget - 1 - type->left()->size();
      if (rb >= 1) {
        std::vector<TermPtr> rs;
        introClosed(type->right(), rb, env, rs);
        for (const auto& r : rs) out.push_back(Term::inr(type->left(), r));
      }
      return;
    }
    case Type::Kind::PropVar:
    case Type::Kind::Bottom:
      return;
  }
}

struct CandidateCaches {
  std::mutex mu;
  std::unordered_map<std::string, Battery> batteries;
  std::unordered_map<std::string, std::vector<TermPtr>> inhabitants;
};

CandidateCaches& caches() {
  static CandidateCaches c;
  return c;
}

std::string cacheKey(const TypePtr& type, int depth) {
  return std::to_string(depth) + "@" + printType(type);
}

}  // namespace

const std::vector<TermPtr>& inhabitants(const TypePtr& type, int depth) {
  auto& c = caches();
  std::string key = cacheKey(type, depth);
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.inhabitants.find(key);
    if (it != c.inhabitants.end()) return it->second;
  }
  std::vector<TermPtr> out;
  out.push_back(Term::var(kInhabitantVar));
  if (depth >= 1) {
    // mu over SN bodies with the bound name not free: the muN remark's shapes
    out.push_back(Term::mu(kMuBinder, type, Term::var(kBotVar)));
    out.push_back(Term::mu(
        kMuBinder, type,
        Term::mu(kInnerMu, Type::bottom(),
                 Term::named(kInnerMu, Term::var(kBotVar)))));
  }
  std::vector<std::pair<std::string, TypePtr>> env;
  std::vector<TermPtr> closed;
  introClosed(type, depth + 1, env, closed);
  for (auto& t : closed) {
    bool dup = false;
    for (const auto& u : out)
      if (alphaEq(u, t)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(t));
  }
  std::lock_guard<std::mutex> lock(c.mu);
  return c.inhabitants.emplace(key, std::move(out)).first->second;
}

const Battery& battery(const TypePtr& type, int depth) {
  auto& c = caches();
  std::string key = cacheKey(type, depth);
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.batteries.find(key);
    if (it != c.batteries.end()) return it->second;
  }
  Battery b;
  b.type = type;
  b.depth = depth;
  b.seqs.push_back({});
  if (depth > 0) {
    switch (type->kind()) {
      case Type::Kind::PropVar:
      case Type::Kind::Bottom:
        break;
      case Type::Kind::Arrow: {
        const auto& heads = inhabitants(type->left(), depth - 1);
        const Battery& rest = battery(type->right(), depth - 1);
        for (const auto& u : heads)
          for (const auto& w : rest.seqs)
            b.seqs.push_back(prepend(ETerm::arg(u), w));
        break;
      }
      case Type::Kind::And: {
        for (const auto& w : battery(type->left(), depth - 1).seqs)
          b.seqs.push_back(prepend(ETerm::proj1(), w));
        for (const auto& w : battery(type->right(), depth - 1).seqs)
          b.seqs.push_back(prepend(ETerm::proj2(), w));
        break;
      }
      case Type::Kind::Or: {
        const Battery& lb = battery(type->left(), depth - 1);
        const Battery& rb = battery(type->right(), depth - 1);
        for (const auto& lu : lb.seqs)
          for (const auto& rv : rb.seqs)
            b.seqs.push_back({ETerm::caseOf(
                Type::bottom(), kCaseLeft, applySeq(Term::var(kCaseLeft), lu),
                kCaseRight, applySeq(Term::var(kCaseRight), rv))});
        b.seqs.push_back({ETerm::caseOf(Type::bottom(), kCaseLeft,
                                        Term::var(kConstBranch), kCaseRight,
                                        Term::var(kConstBranch))});
        break;
      }
    }
  }
  // dedup up to alpha, then sort for a stable, depth-monotone order
  std::vector<std::pair<std::string, Seq>> keyed;
  keyed.reserve(b.seqs.size());
  for (auto& w : b.seqs) {
    std::string k = seqKey(w);
    bool dup = false;
    for (const auto& [ek, ew] : keyed)
      if (ek == k) {
        dup = true;
        break;
      }
    if (!dup) keyed.emplace_back(std::move(k), std::move(w));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& bq) { return a.first < bq.first; });
  b.seqs.clear();
  for (auto& [k, w] : keyed) {
    (void)k;
    b.seqs.push_back(std::move(w));
  }
  std::lock_guard<std::mutex> lock(c.mu);
  return c.batteries.emplace(key, std::move(b)).first->second;
}

bool memberTest(const TermPtr& t, const TypePtr& type, int depth,
                std::uint64_t fuel) {
  for (const auto& w : battery(type, depth).seqs)
    if (!isSn(applySeq(t, w), fuel).known) return false;
  return true;
}

bool adequationCheck(const Judgement& j, int depth, std::uint64_t fuel) {
  std::vector<std::pair<std::string, const std::vector<TermPtr>*>> gammaChoices;
  for (const auto& [x, ty] : j.ctx().gamma)
    gammaChoices.emplace_back(x, &inhabitants(ty, depth));
  std::vector<std::pair<std::string, const std::vector<Seq>*>> deltaChoices;
  for (const auto& [a, ty] : j.ctx().delta)
    deltaChoices.emplace_back(a, &battery(ty, depth).seqs);

  std::size_t n = gammaChoices.size() + deltaChoices.size();
  std::vector<std::size_t> idx(n, 0);
  auto limitAt = [&](std::size_t i) {
    return i < gammaChoices.size()
               ? gammaChoices[i].second->size()
               : deltaChoices[i - gammaChoices.size()].second->size();
  };
  int combos = 0;
  for (;;) {
    std::map<std::string, TermPtr> sub;
    for (std::size_t i = 0; i < gammaChoices.size(); ++i)
      sub[gammaChoices[i].first] = (*gammaChoices[i].second)[idx[i]];
    TermPtr t = substPar(j.term(), sub);
    for (std::size_t i = 0; i < deltaChoices.size(); ++i)
      t = structSubstSeq(t, deltaChoices[i].first,
                         (*deltaChoices[i].second)[idx[gammaChoices.size() + i]]);
    if (!memberTest(t, j.type(), depth, fuel)) return false;
    if (++combos >= kMaxAssignments) break;
    // odometer, rightmost fastest
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++idx[i] < limitAt(i)) break;
      idx[i] = 0;
      if (i == 0) return true;  // wrapped around: product exhausted
    }
    if (n == 0) break;
  }
  return true;
}

}  // namespace lmu
