#include "lmu/harness.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <random>
#include <unordered_map>

#include <json.hpp>

namespace lmu {

namespace {

using OrderedJson = nlohmann::ordered_json;

void validate(const GenConfig& cfg) {
  if (cfg.maxSize < 1) throw Error("maxSize must be >= 1");
  if (cfg.depth < 0 || cfg.depth > 3) throw Error("battery depth is capped at 3");
  if (cfg.sampleMaxSize < 1) throw Error("sampleMaxSize must be >= 1");
  if (cfg.sampleCount < 0) throw Error("sampleCount must be >= 0");
}

std::vector<TypePtr> poolOf(const GenConfig& cfg) {
  return cfg.typePool.empty() ? defaultTypePool() : cfg.typePool;
}

// Coverage is reported per rule family, indices merged.
const char* familyName(RedexKind k) {
  switch (k) {
    case RedexKind::Beta: return "beta";
    case RedexKind::ProjPair1:
    case RedexKind::ProjPair2: return "proj_pair";
    case RedexKind::CaseInj1:
    case RedexKind::CaseInj2: return "case_inj";
    case RedexKind::Permutative: return "permutative";
    case RedexKind::Classical: return "classical";
  }
  return "?";
}

const std::vector<std::string>& redexFamilies() {
  static const std::vector<std::string> fams = {"beta", "proj_pair", "case_inj",
                                                "permutative", "classical"};
  return fams;
}

std::string headerString(const GenConfig& cfg) {
  auto pool = poolOf(cfg);
  Contexts ctx = harnessContexts(cfg);
  std::string h = "context {";
  bool first = true;
  for (const auto& [x, ty] : ctx.gamma) {
    if (!first) h += ", ";
    first = false;
    h += x + ":" + printType(ty);
  }
  h += " ; ";
  first = true;
  for (const auto& [a, ty] : ctx.delta) {
    if (!first) h += ", ";
    first = false;
    h += a + ":" + printType(ty);
  }
  h += "}; pool [";
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i) h += ", ";
    h += printType(pool[i]);
  }
  h += "]; maxSize=" + std::to_string(cfg.maxSize) +
       "; samples=" + std::to_string(cfg.sampleCount) + "@" +
       std::to_string(cfg.sampleMaxSize) + "; seed=" + std::to_string(cfg.seed) +
       "; depth=" + std::to_string(cfg.depth) +
       "; fuel=" + std::to_string(cfg.fuel);
  return h;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration: all well-typed terms over the pool and the fixed
// context scheme, memoized per (environment shape, exact size). Binder names
// are determined by scope depth, so the output has no alpha-duplicates.

struct Entry {
  TermPtr term;
  TypePtr type;
};

struct Enumerator {
  std::vector<TypePtr> pool;

  std::vector<std::pair<std::string, TypePtr>> gamma, delta;  // scope stacks
  std::string envKey;

  std::unordered_map<std::string, std::vector<Entry>> memo;
  std::unordered_map<std::string, std::map<std::string, std::vector<const Entry*>>>
      index;

  void rebuildKey() {
    envKey.clear();
    for (const auto& [n, t] : gamma) {
      (void)n;
      envKey += 'g';
      envKey += printType(t);
      envKey += ';';
    }
    for (const auto& [n, t] : delta) {
      (void)n;
      envKey += 'd';
      envKey += printType(t);
      envKey += ';';
    }
  }

  std::string pushGamma(const TypePtr& ty) {
    std::string x = "x" + std::to_string(gamma.size() + 1);
    gamma.emplace_back(x, ty);
    rebuildKey();
    return x;
  }
  void popGamma() {
    gamma.pop_back();
    rebuildKey();
  }
  std::string pushDelta(const TypePtr& ty) {
    std::string a = "a" + std::to_string(delta.size() + 1);
    delta.emplace_back(a, ty);
    rebuildKey();
    return a;
  }
  void popDelta() {
    delta.pop_back();
    rebuildKey();
  }

  const std::vector<Entry>& enumExact(int size) {
    std::string k = envKey + "#" + std::to_string(size);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    std::vector<Entry> out = build(size);
    return memo.emplace(std::move(k), std::move(out)).first->second;
  }

  const std::map<std::string, std::vector<const Entry*>>& typeIndex(int size) {
    std::string k = envKey + "#" + std::to_string(size);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    const auto& entries = enumExact(size);
    std::map<std::string, std::vector<const Entry*>> m;
    for (const auto& e : entries) m[printType(e.type)].push_back(&e);
    std::string k2 = envKey + "#" + std::to_string(size);
    return index.emplace(std::move(k2), std::move(m)).first->second;
  }

  std::vector<Entry> build(int size) {
    std::vector<Entry> out;
    if (size < 1) return out;
    if (size == 1) {
      for (const auto& [n, t] : gamma) out.push_back({Term::var(n), t});
      return out;
    }
    // lam
    for (const auto& ann : pool) {
      int bs = size - 1 - ann->size();
      if (bs < 1) continue;
      std::string x = pushGamma(ann);
      const auto& bodies = enumExact(bs);
      popGamma();
      for (const auto& e : bodies)
        out.push_back({Term::lam(x, ann, e.term), Type::arrow(ann, e.type)});
    }
    // pair
    for (int s1 = 1; s1 <= size - 2; ++s1) {
      const auto& ls = enumExact(s1);
      const auto& rs = enumExact(size - 1 - s1);
      for (const auto& l : ls)
        for (const auto& r : rs)
          out.push_back({Term::pair(l.term, r.term), Type::conj(l.type, r.type)});
    }
    // inl / inr
    for (const auto& other : pool) {
      int bs = size - 1 - other->size();
      if (bs < 1) continue;
      for (const auto& e : enumExact(bs))
        out.push_back({Term::inl(other, e.term), Type::disj(e.type, other)});
    }
    for (const auto& other : pool) {
      int bs = size - 1 - other->size();
      if (bs < 1) continue;
      for (const auto& e : enumExact(bs))
        out.push_back({Term::inr(other, e.term), Type::disj(other, e.type)});
    }
    // mu
    for (const auto& ann : pool) {
      int bs = size - 1 - ann->size();
      if (bs < 1) continue;
      std::string a = pushDelta(ann);
      const auto& bodies = enumExact(bs);
      popDelta();
      for (const auto& e : bodies)
        if (e.type->kind() == Type::Kind::Bottom)
          out.push_back({Term::mu(a, ann, e.term), ann});
    }
    // named
    for (const auto& [a, dty] : delta) {
      for (const auto& e : enumExact(size - 1))
        if (typeEq(e.type, dty))
          out.push_back({Term::named(a, e.term), Type::bottom()});
    }
    // app with a term argument
    for (int sh = 1; sh <= size - 2; ++sh) {
      int sa = size - 1 - sh;
      const auto& heads = enumExact(sh);
      const auto& args = typeIndex(sa);
      for (const auto& h : heads) {
        if (h.type->kind() != Type::Kind::Arrow) continue;
        auto it = args.find(printType(h.type->left()));
        if (it == args.end()) continue;
        for (const Entry* a : it->second)
          out.push_back({Term::app(h.term, ETerm::arg(a->term)), h.type->right()});
      }
    }
    // app with a projection
    if (size - 2 >= 1) {
      for (const auto& h : enumExact(size - 2)) {
        if (h.type->kind() != Type::Kind::And) continue;
        out.push_back({Term::app(h.term, ETerm::proj1()), h.type->left()});
        out.push_back({Term::app(h.term, ETerm::proj2()), h.type->right()});
      }
    }
    // app with a case frame: size = 2 + head + |C| + left + right
    for (int sh = 1; sh <= size - 5; ++sh) {
      const auto& heads = enumExact(sh);
      for (const auto& h : heads) {
        if (h.type->kind() != Type::Kind::Or) continue;
        for (int sl = 1; sl <= size - 4 - sh; ++sl) {
          for (int sr = 1; sr <= size - 3 - sh - sl; ++sr) {
            int cs = size - 2 - sh - sl - sr;
            if (cs < 1) continue;
            std::string x = pushGamma(h.type->left());
            const auto& ls = enumExact(sl);
            popGamma();
            pushGamma(h.type->right());
            const auto& rIdx = typeIndex(sr);
            popGamma();
            for (const auto& l : ls) {
              if (l.type->size() != cs) continue;
              auto it = rIdx.find(printType(l.type));
              if (it == rIdx.end()) continue;
              for (const Entry* r : it->second)
                out.push_back({Term::app(h.term, ETerm::caseOf(l.type, x, l.term,
                                                               x, r->term)),
                               l.type});
            }
          }
        }
      }
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Typing-rule-directed random generation.

struct Sampler {
  std::vector<TypePtr> pool;
  int maxSize;
  std::mt19937_64 rng;
  std::map<std::string, TypePtr> gamma, delta;
  int nextX = 0, nextA = 0;

  explicit Sampler(const GenConfig& cfg)
      : pool(poolOf(cfg)), maxSize(cfg.sampleMaxSize), rng(cfg.seed) {}

  std::uint64_t pick(std::uint64_t n) { return n ? rng() % n : 0; }

  const TypePtr& randomPool() { return pool[pick(pool.size())]; }

  TermPtr sampleOne(TypePtr& goalOut) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      nextX = 0;
      nextA = 0;
      TypePtr goal = randomPool();
      auto t = gen(goal, maxSize, 0);
      if (t) {
        goalOut = goal;
        return *t;
      }
    }
    throw GenerationStuck("could not complete a sample within the retry cap");
  }

  struct ScopedVar {
    std::map<std::string, TypePtr>& map;
    std::string name;
    TypePtr saved;
    ScopedVar(std::map<std::string, TypePtr>& m, std::string n, TypePtr ty)
        : map(m), name(std::move(n)) {
      auto it = map.find(name);
      if (it != map.end()) saved = it->second;
      map[name] = std::move(ty);
    }
    ~ScopedVar() {
      if (saved)
        map[name] = saved;
      else
        map.erase(name);
    }
  };

  enum class Prod { Ax, Lam, Pair, Inl, Inr, Mu, Named, AppArg, AppProj, AppCase };

  std::optional<TermPtr> gen(const TypePtr& goal, int budget, int depth) {
    if (budget < 1 || depth > 64) return std::nullopt;
    std::vector<std::pair<Prod, int>> prods;  // (production, weight)
    std::vector<std::string> axVars;
    for (const auto& [x, ty] : gamma)
      if (typeEq(ty, goal)) axVars.push_back(x);
    if (!axVars.empty()) prods.emplace_back(Prod::Ax, budget <= 3 ? 12 : 4);
    if (goal->kind() == Type::Kind::Arrow && budget >= 2 + goal->left()->size())
      prods.emplace_back(Prod::Lam, 5);
    if (goal->kind() == Type::Kind::And && budget >= 3)
      prods.emplace_back(Prod::Pair, 5);
    if (goal->kind() == Type::Kind::Or && budget >= 2 + goal->right()->size())
      prods.emplace_back(Prod::Inl, 3);
    if (goal->kind() == Type::Kind::Or && budget >= 2 + goal->left()->size())
      prods.emplace_back(Prod::Inr, 3);
    if (budget >= 2 + goal->size()) prods.emplace_back(Prod::Mu, 2);
    if (goal->kind() == Type::Kind::Bottom && !delta.empty() && budget >= 2)
      prods.emplace_back(Prod::Named, 6);
    if (budget >= 4) {
      prods.emplace_back(Prod::AppArg, 3);
      prods.emplace_back(Prod::AppProj, 2);
    }
    if (budget >= 6 + goal->size()) prods.emplace_back(Prod::AppCase, 3);
    if (prods.empty()) return std::nullopt;

    int total = 0;
    for (const auto& [p, w] : prods) {
      (void)p;
      total += w;
    }
    for (int attempt = 0; attempt < 8; ++attempt) {
      int roll = static_cast<int>(pick(total));
      Prod chosen = prods[0].first;
      for (const auto& [p, w] : prods) {
        if (roll < w) {
          chosen = p;
          break;
        }
        roll -= w;
      }
      // failed productions release the binder names they allocated
      int savedX = nextX, savedA = nextA;
      auto t = apply(chosen, goal, budget, depth, axVars);
      if (t) return t;
      nextX = savedX;
      nextA = savedA;
    }
    return std::nullopt;
  }

  std::optional<TermPtr> apply(Prod p, const TypePtr& goal, int budget, int depth,
                               const std::vector<std::string>& axVars) {
    switch (p) {
      case Prod::Ax:
        return Term::var(axVars[pick(axVars.size())]);
      case Prod::Lam: {
        std::string x = "x" + std::to_string(3 + nextX++);
        ScopedVar sv(gamma, x, goal->left());
        auto body = gen(goal->right(), budget - 1 - goal->left()->size(), depth + 1);
        if (!body) return std::nullopt;
        return Term::lam(x, goal->left(), *body);
      }
      case Prod::Pair: {
        int s1 = 1 + static_cast<int>(pick(budget - 2));
        auto f = gen(goal->left(), s1, depth + 1);
        if (!f) return std::nullopt;
        auto s = gen(goal->right(), budget - 1 - (*f)->size(), depth + 1);
        if (!s) return std::nullopt;
        return Term::pair(*f, *s);
      }
      case Prod::Inl: {
        auto b = gen(goal->left(), budget - 1 - goal->right()->size(), depth + 1);
        if (!b) return std::nullopt;
        return Term::inl(goal->right(), *b);
      }
      case Prod::Inr: {
        auto b = gen(goal->right(), budget - 1 - goal->left()->size(), depth + 1);
        if (!b) return std::nullopt;
        return Term::inr(goal->left(), *b);
      }
      case Prod::Mu: {
        std::string a = "a" + std::to_string(2 + nextA++);
        ScopedVar sv(delta, a, goal);
        auto body = gen(Type::bottom(), budget - 1 - goal->size(), depth + 1);
        if (!body) return std::nullopt;
        return Term::mu(a, goal, *body);
      }
      case Prod::Named: {
        std::vector<std::pair<std::string, TypePtr>> ds(delta.begin(), delta.end());
        const auto& [a, ty] = ds[pick(ds.size())];
        auto body = gen(ty, budget - 1, depth + 1);
        if (!body) return std::nullopt;
        return Term::named(a, *body);
      }
      case Prod::AppArg: {
        const TypePtr& dom = randomPool();
        int hb = 1 + static_cast<int>(pick(budget - 2));
        auto h = gen(Type::arrow(dom, goal), hb, depth + 1);
        if (!h) return std::nullopt;
        auto v = gen(dom, budget - 1 - (*h)->size(), depth + 1);
        if (!v) return std::nullopt;
        return Term::app(*h, ETerm::arg(*v));
      }
      case Prod::AppProj: {
        const TypePtr& other = randomPool();
        bool first = pick(2) == 0;
        auto h = gen(first ? Type::conj(goal, other) : Type::conj(other, goal),
                     budget - 2, depth + 1);
        if (!h) return std::nullopt;
        return Term::app(*h, first ? ETerm::proj1() : ETerm::proj2());
      }
      case Prod::AppCase: {
        const TypePtr& a = randomPool();
        const TypePtr& b = randomPool();
        int avail = budget - 2 - goal->size();  // app + case nodes + annotation
        int hb = 1 + static_cast<int>(pick(std::max(1, avail - 2)));
        auto h = gen(Type::disj(a, b), hb, depth + 1);
        if (!h) return std::nullopt;
        avail -= (*h)->size();
        if (avail < 2) return std::nullopt;
        std::string x = "x" + std::to_string(3 + nextX++);
        int lb = 1 + static_cast<int>(pick(std::max(1, avail - 1)));
        std::optional<TermPtr> l;
        {
          ScopedVar sv(gamma, x, a);
          l = gen(goal, lb, depth + 1);
        }
        if (!l) return std::nullopt;
        std::optional<TermPtr> r;
        {
          ScopedVar sv(gamma, x, b);
          r = gen(goal, avail - (*l)->size(), depth + 1);
        }
        if (!r) return std::nullopt;
        return Term::app(*h, ETerm::caseOf(goal, x, *l, x, *r));
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::vector<TypePtr> defaultTypePool() {
  TypePtr p = Type::prop("P");
  TypePtr q = Type::prop("Q");
  TypePtr bot = Type::bottom();
  return {p,
          q,
          bot,
          Type::arrow(p, q),
          Type::conj(p, q),
          Type::disj(p, q),
          Type::arrow(Type::arrow(Type::arrow(p, bot), bot), p)};
}

Contexts harnessContexts(const GenConfig& cfg) {
  auto pool = poolOf(cfg);
  Contexts ctx;
  ctx.gamma["x1"] = pool[0];
  ctx.gamma["x2"] = pool[3 % pool.size()];
  ctx.delta["a1"] = pool[3 % pool.size()];
  return ctx;
}

void enumerateTyped(const GenConfig& cfg,
                    const std::function<void(const Judgement&)>& fn) {
  validate(cfg);
  Contexts base = harnessContexts(cfg);
  Enumerator en;
  en.pool = poolOf(cfg);
  for (const auto& [x, ty] : base.gamma) en.gamma.emplace_back(x, ty);
  for (const auto& [a, ty] : base.delta) en.delta.emplace_back(a, ty);
  en.rebuildKey();
  for (int s = 1; s <= cfg.maxSize; ++s) {
    const auto& entries = en.enumExact(s);
    for (const auto& e : entries) fn(check(base, e.term, e.type));
  }
}

void sampleTyped(const GenConfig& cfg,
                 const std::function<void(const Judgement&)>& fn) {
  validate(cfg);
  Contexts base = harnessContexts(cfg);
  Sampler sampler(cfg);
  sampler.gamma = base.gamma;
  sampler.delta = base.delta;
  for (int i = 0; i < cfg.sampleCount; ++i) {
    TypePtr goal;
    TermPtr t = sampler.sampleOne(goal);
    fn(check(base, t, goal));  // re-validation is part of the pipeline
  }
}

// ---------------------------------------------------------------------------
// Suites

namespace {

struct SuiteCtx {
  const GenConfig& cfg;
  std::vector<TypePtr> pool;
  Contexts base;
  SuiteReport rep;

  void coverTerm(const TermPtr& t) {
    for (const auto& s : redexes(t)) rep.coverage[familyName(s.kind)]++;
  }

  void fail(const std::string& what, const TermPtr& term, const TypePtr& type,
            const std::string& counterexample = "") {
    if (rep.failures.size() >= 50) return;  // keep reports bounded
    rep.failures.push_back({what, printTerm(term), type ? printType(type) : "",
                            counterexample});
  }
};

void forEachJudgement(const GenConfig& cfg,
                      const std::function<void(const Judgement&)>& fn) {
  enumerateTyped(cfg, fn);
  sampleTyped(cfg, fn);
}

// Greedy shrinking: replace subterms by same-typed variables in scope while
// the judgement keeps failing the predicate.
struct Shrinker {
  const std::function<bool(const Judgement&)>& stillFails;

  Judgement run(const Judgement& j) {
    Judgement cur = j;
    bool improved = true;
    while (improved) {
      improved = false;
      std::vector<Candidate> cands;
      Contexts ctx = cur.ctx();
      collect(cur.term(), ctx, {}, cands);
      std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return a.replacement->size() < b.replacement->size();
      });
      for (const auto& c : cands) {
        TermPtr candidate = replaceAt(cur.term(), c.path, 0, c.replacement);
        if (candidate->size() >= cur.term()->size()) continue;
        try {
          Judgement next = check(cur.ctx(), candidate, cur.type());
          if (stillFails(next)) {
            cur = next;
            improved = true;
            break;
          }
        } catch (const TypeError&) {
        }
      }
    }
    return cur;
  }

private:
  struct Candidate {
    std::vector<int> path;
    TermPtr replacement;
  };

  // at each position, candidate replacements are in-scope variables with the
  // subterm's type
  void collect(const TermPtr& t, Contexts& ctx, std::vector<int> path,
               std::vector<Candidate>& out) {
    TypePtr ty;
    try {
      ty = infer(ctx, t);
    } catch (const TypeError&) {
      return;
    }
    if (t->kind() != Term::Kind::Var) {
      for (const auto& [x, vty] : ctx.gamma)
        if (typeEq(vty, ty)) out.push_back({path, Term::var(x)});
    }
    switch (t->kind()) {
      case Term::Kind::Var:
        return;
      case Term::Kind::Lam: {
        Scoped sv(ctx.gamma, t->name(), t->ann());
        descend(t->body(), ctx, path, 0, out);
        return;
      }
      case Term::Kind::Inl:
      case Term::Kind::Inr:
        descend(t->body(), ctx, path, 0, out);
        return;
      case Term::Kind::Mu: {
        Scoped sv(ctx.delta, t->name(), t->ann());
        descend(t->body(), ctx, path, 0, out);
        return;
      }
      case Term::Kind::Named:
        descend(t->body(), ctx, path, 0, out);
        return;
      case Term::Kind::Pair:
        descend(t->fst(), ctx, path, 0, out);
        descend(t->snd(), ctx, path, 1, out);
        return;
      case Term::Kind::App: {
        descend(t->head(), ctx, path, 0, out);
        const ETermPtr& e = t->arg();
        if (e->kind() == ETerm::Kind::Arg) {
          descend(e->term(), ctx, path, 1, out);
        } else if (e->kind() == ETerm::Kind::Case) {
          TypePtr headTy;
          try {
            headTy = infer(ctx, t->head());
          } catch (const TypeError&) {
            return;
          }
          if (headTy->kind() != Type::Kind::Or) return;
          {
            Scoped sv(ctx.gamma, e->leftName(), headTy->left());
            descend(e->left(), ctx, path, 1, out);
          }
          {
            Scoped sv(ctx.gamma, e->rightName(), headTy->right());
            descend(e->right(), ctx, path, 2, out);
          }
        }
        return;
      }
    }
  }

  void descend(const TermPtr& t, Contexts& ctx, std::vector<int> path, int idx,
               std::vector<Candidate>& out) {
    path.push_back(idx);
    collect(t, ctx, std::move(path), out);
  }

  struct Scoped {
    std::map<std::string, TypePtr>& map;
    std::string name;
    TypePtr saved;
    Scoped(std::map<std::string, TypePtr>& m, const std::string& n, TypePtr ty)
        : map(m), name(n) {
      auto it = map.find(n);
      if (it != map.end()) saved = it->second;
      map[n] = std::move(ty);
    }
    ~Scoped() {
      if (saved)
        map[name] = saved;
      else
        map.erase(name);
    }
  };

  static TermPtr replaceAt(const TermPtr& t, const std::vector<int>& path,
                           std::size_t i, const TermPtr& replacement) {
    if (i == path.size()) return replacement;
    int idx = path[i];
    switch (t->kind()) {
      case Term::Kind::Lam:
        return Term::lam(t->name(), t->ann(),
                         replaceAt(t->body(), path, i + 1, replacement));
      case Term::Kind::Inl:
        return Term::inl(t->ann(), replaceAt(t->body(), path, i + 1, replacement));
      case Term::Kind::Inr:
        return Term::inr(t->ann(), replaceAt(t->body(), path, i + 1, replacement));
      case Term::Kind::Mu:
        return Term::mu(t->name(), t->ann(),
                        replaceAt(t->body(), path, i + 1, replacement));
      case Term::Kind::Named:
        return Term::named(t->name(), replaceAt(t->body(), path, i + 1, replacement));
      case Term::Kind::Pair:
        if (idx == 0)
          return Term::pair(replaceAt(t->fst(), path, i + 1, replacement), t->snd());
        return Term::pair(t->fst(), replaceAt(t->snd(), path, i + 1, replacement));
      case Term::Kind::App: {
        if (idx == 0)
          return Term::app(replaceAt(t->head(), path, i + 1, replacement), t->arg());
        const ETermPtr& e = t->arg();
        if (e->kind() == ETerm::Kind::Arg)
          return Term::app(t->head(),
                           ETerm::arg(replaceAt(e->term(), path, i + 1, replacement)));
        if (e->kind() == ETerm::Kind::Case) {
          if (idx == 1)
            return Term::app(t->head(),
                             ETerm::caseOf(e->ann(), e->leftName(),
                                           replaceAt(e->left(), path, i + 1,
                                                     replacement),
                                           e->rightName(), e->right()));
          return Term::app(t->head(),
                           ETerm::caseOf(e->ann(), e->leftName(), e->left(),
                                         e->rightName(),
                                         replaceAt(e->right(), path, i + 1,
                                                   replacement)));
        }
        return t;
      }
      default:
        return t;
    }
  }
};

std::string shrinkFor(const Judgement& j,
                      const std::function<bool(const Judgement&)>& stillFails) {
  try {
    return printTerm(shrinkJudgement(j, stillFails).term());
  } catch (const Error&) {
    return printTerm(j.term());
  }
}

// Deterministic pool of nice sequences for the lemma suites: battery
// sequences of every pool type plus the empty sequence, deduplicated.
std::vector<Seq> niceSeqPool(const SuiteCtx& sc) {
  std::vector<Seq> out;
  out.push_back({});
  std::set<std::string> seen;
  seen.insert("0|");
  for (const auto& ty : sc.pool) {
    for (const auto& w : battery(ty, sc.cfg.depth).seqs) {
      std::string k = std::to_string(w.size()) + "|";
      for (const auto& e : w) k += printETerm(alphaCanonical(e)) + " ";
      if (seen.insert(k).second) out.push_back(w);
    }
  }
  return out;
}

// ---- subject_reduction: every one-step reduct re-typechecks at the same type

void suiteSubjectReduction(SuiteCtx& sc) {
  forEachJudgement(sc.cfg, [&](const Judgement& j) {
    sc.rep.casesRun++;
    auto rs = redexes(j.term());
    for (const auto& s : rs) {
      sc.rep.coverage[familyName(s.kind)]++;
      TermPtr u = step(j.term(), s);
      std::string problem;
      try {
        TypePtr ty = infer(j.ctx(), u);
        if (!typeEq(ty, j.type()))
          problem = "reduct has type " + printType(ty) + " instead of " +
                    printType(j.type());
      } catch (const TypeError& e) {
        problem = std::string("reduct fails to typecheck: ") + e.what();
      }
      if (!problem.empty()) {
        auto pred = [&](const Judgement& cand) {
          for (const auto& cs : redexes(cand.term())) {
            try {
              if (!typeEq(infer(cand.ctx(), step(cand.term(), cs)), cand.type()))
                return true;
            } catch (const TypeError&) {
              return true;
            }
          }
          return false;
        };
        sc.fail(problem + " (step " + pathString(s.path) + " " +
                    redexKindName(s.kind) + " -> " + printTerm(u) + ")",
                j.term(), j.type(), shrinkFor(j, pred));
      }
    }
  });
}

// ---- confluence: the exhaustive graph has exactly one normal form

void suiteConfluence(SuiteCtx& sc) {
  forEachJudgement(sc.cfg, [&](const Judgement& j) {
    sc.rep.casesRun++;
    ReductionGraph g = buildGraph(j.term(), sc.cfg.fuel);
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
      for (const auto& [s, m] : g.edges[n]) {
        (void)m;
        sc.rep.coverage[familyName(s.kind)]++;
      }
    if (!g.complete) {
      sc.fail("reduction graph exceeded fuel", j.term(), j.type());
      return;
    }
    if (g.hasCycle) {
      sc.fail("reduction graph has a cycle", j.term(), j.type());
      return;
    }
    auto nfs = g.normalFormIds();
    if (nfs.size() != 1) {
      std::string what = "found " + std::to_string(nfs.size()) + " normal forms:";
      for (std::size_t i = 0; i < nfs.size() && i < 3; ++i)
        what += " | " + printTerm(g.nodes[nfs[i]]);
      auto pred = [&](const Judgement& cand) {
        ReductionGraph cg = buildGraph(cand.term(), sc.cfg.fuel);
        return cg.complete && !cg.hasCycle && cg.normalFormIds().size() != 1;
      };
      sc.fail(what, j.term(), j.type(), shrinkFor(j, pred));
    }
    if (g.nodes.size() > sc.rep.details["max_graph_size"])
      sc.rep.details["max_graph_size"] = g.nodes.size();
  });
}

// ---- strong_normalization: is_sn is SN for every typed term, all five redex
// families exercised across the corpus

void suiteStrongNormalization(SuiteCtx& sc) {
  forEachJudgement(sc.cfg, [&](const Judgement& j) {
    sc.rep.casesRun++;
    ReductionGraph g = buildGraph(j.term(), sc.cfg.fuel);
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
      for (const auto& [s, m] : g.edges[n]) {
        (void)m;
        sc.rep.coverage[familyName(s.kind)]++;
      }
    if (!g.complete || g.hasCycle) {
      auto pred = [&](const Judgement& cand) {
        return !isSn(cand.term(), sc.cfg.fuel).known;
      };
      sc.fail(!g.complete ? "is_sn hit the fuel limit on a typed term"
                          : "typed term has a cyclic reduction graph",
              j.term(), j.type(), shrinkFor(j, pred));
      return;
    }
    SnResult r = isSn(j.term(), sc.cfg.fuel);
    if (r.eta > sc.rep.details["max_eta"]) sc.rep.details["max_eta"] = r.eta;
    if (r.graphSize > sc.rep.details["max_graph_size"])
      sc.rep.details["max_graph_size"] = r.graphSize;
  });
  for (const auto& fam : redexFamilies()) {
    if (sc.rep.coverage[fam] == 0)
      sc.rep.failures.push_back(
          {"CoverageError: redex kind never exercised: " + fam, "", "", ""});
  }
}

bool reachable(const TermPtr& from, const TermPtr& to, std::uint64_t fuel) {
  ReductionGraph g = buildGraph(from, fuel);
  TermPtr target = alphaCanonical(to);
  for (const auto& n : g.nodes)
    if (termEq(n, target)) return true;
  return false;
}

// ---- substitution_lemma: one-step compatibility and many-step stability of
// both substitutions

void suiteSubstitutionLemma(SuiteCtx& sc) {
  std::optional<Judgement> prev;
  const TypePtr x1Type = sc.base.gamma.at("x1");
  const TypePtr x2Type = sc.base.gamma.at("x2");
  forEachJudgement(sc.cfg, [&](const Judgement& j) {
    sc.coverTerm(j.term());
    if (!prev) {
      prev = j;
      return;
    }
    const TermPtr& u = j.term();
    const TermPtr& t = prev->term();
    auto rs = redexes(u);
    if (!rs.empty()) {
      TermPtr u2 = step(u, rs[0]);
      // item 1: one step survives substitution into the redex carrier
      sc.rep.casesRun++;
      sc.rep.details["item1"]++;
      TermPtr su = subst(u, "x1", t);
      TermPtr su2 = subst(u2, "x1", t);
      bool found = false;
      for (const auto& r : reducts(su))
        if (alphaEq(r, su2)) {
          found = true;
          break;
        }
      if (!found)
        sc.fail("item 1: u[x:=t] does not one-step to u'[x:=t]; u' = " +
                    printTerm(u2) + ", t = " + printTerm(t),
                u, j.type());
      ETermPtr eps = ETerm::arg(t);
      TermPtr mu1 = structSubst(u, "a1", eps);
      TermPtr mu2 = structSubst(u2, "a1", eps);
      found = false;
      for (const auto& r : reducts(mu1))
        if (alphaEq(r, mu2)) {
          found = true;
          break;
        }
      if (!found)
        sc.fail("item 1 (structural): u[a:=*t] does not one-step to u'[a:=*t]; "
                "u' = " + printTerm(u2) + ", t = " + printTerm(t),
                u, j.type());
      // item 2 needs the substitution to stay well-typed so that the graph
      // search terminates: u must inhabit the substituted variable's type
      const char* var = typeEq(j.type(), x1Type)   ? "x1"
                        : typeEq(j.type(), x2Type) ? "x2"
                                                   : nullptr;
      if (var) {
        sc.rep.casesRun++;
        sc.rep.details["item2"]++;
        TermPtr a = subst(t, var, u);
        TermPtr b = subst(t, var, u2);
        if (!reachable(a, b, sc.cfg.fuel))
          sc.fail("item 2: t[x:=u] does not reduce to t[x:=u']; t = " +
                      printTerm(t),
                  u, j.type());
      }
      // the structural half needs elim_type(a1's type, u) defined, i.e. a
      // u of the domain type
      const TypePtr& a1Type = sc.base.delta.at("a1");
      if (a1Type->kind() == Type::Kind::Arrow &&
          typeEq(j.type(), a1Type->left())) {
        sc.rep.details["item2_structural"]++;
        TermPtr sa = structSubstSeq(t, "a1", {ETerm::arg(u)});
        TermPtr sb = structSubstSeq(t, "a1", {ETerm::arg(u2)});
        if (!reachable(sa, sb, sc.cfg.fuel))
          sc.fail("item 2 (structural): t[a:=*u] does not reduce to t[a:=*u']; "
                  "t = " + printTerm(t),
                  u, j.type());
      }
    }
    prev = j;
  });
}

// ---- nice_preservation: replacing one element of a nice sequence by a
// one-step reduct keeps the sequence nice

void suiteNicePreservation(SuiteCtx& sc) {
  std::vector<Seq> pool = niceSeqPool(sc);
  std::optional<Judgement> prev;
  forEachJudgement(sc.cfg, [&](const Judgement& j) {
    sc.coverTerm(j.term());
    if (!prev) {
      prev = j;
      return;
    }
    const TermPtr& t = j.term();
    const TermPtr& p = prev->term();
    std::vector<Seq> seqs;
    seqs.push_back({ETerm::arg(t)});
    seqs.push_back({ETerm::arg(t), ETerm::proj1()});
    seqs.push_back({ETerm::proj1(), ETerm::arg(t)});
    seqs.push_back({ETerm::arg(p),
                    ETerm::caseOf(Type::bottom(), "dx", t, "dy", p)});
    seqs.push_back(pool[sc.rep.casesRun % pool.size()]);
    for (const auto& w : seqs) {
      if (!isNice(w)) continue;
      for (std::size_t i = 0; i < w.size(); ++i) {
        auto rs = reducts(w[i]);
        for (std::size_t k = 0; k < rs.size() && k < 4; ++k) {
          Seq w2 = w;
          w2[i] = rs[k];
          sc.rep.casesRun++;
          if (!isNice(w2))
            sc.fail("reduct at position " + std::to_string(i) +
                        " broke niceness of " + printSeq(w),
                    t, j.type());
        }
      }
    }
    prev = j;
  });
}

// Combining several corpus terms multiplies their reduction graphs (the
// interleavings of independent redex sites), so the combination-heavy lemma
// suites draw their participants from the small end of the corpus.
constexpr int kLemmaParticipantSizeCap = 12;

// ---- int_lemma: the five SN-closure items

void suiteIntLemma(SuiteCtx& sc) {
  std::vector<Seq> pool = niceSeqPool(sc);
  std::vector<Judgement> window;
  const TypePtr t1Type = sc.base.gamma.at("x1");
  const TypePtr muAnn = sc.base.delta.at("a1");
  std::uint64_t caseIdx = 0;
  forEachJudgement(sc.cfg, [&](const Judgement& j) {
    sc.coverTerm(j.term());
    if (j.term()->size() > kLemmaParticipantSizeCap) return;
    window.push_back(j);
    if (window.size() > 3) window.erase(window.begin());
    if (window.size() < 3) return;
    const TermPtr& t = window[2].term();
    const TermPtr& u = window[1].term();
    const TermPtr& v = window[0].term();
    const Seq& w = pool[caseIdx++ % pool.size()];
    std::uint64_t fuel = sc.cfg.fuel;

    // item 1: (x w) is SN for a nice w of SN elements
    sc.rep.casesRun++;
    sc.rep.details["item1"]++;
    if (!isSn(applySeq(Term::var("w"), w), fuel).known)
      sc.fail("item 1: (x w) not SN for w = " + printSeq(w), t, nullptr);

    // item 2: u SN and (t[x:=u] w) SN imply ((\\x.t u) w) SN
    if (isSn(u, fuel).known &&
        isSn(applySeq(subst(t, "x1", u), w), fuel).known) {
      sc.rep.casesRun++;
      sc.rep.details["item2"]++;
      TermPtr beta = applySeq(
          Term::app(Term::lam("x1", t1Type, t), ETerm::arg(u)), w);
      if (!isSn(beta, fuel).known)
        sc.fail("item 2: ((\\x.t u) w) not SN; t = " + printTerm(t) +
                    ", u = " + printTerm(u) + ", w = " + printSeq(w),
                beta, nullptr);
    }

    // item 3: t1, t2 SN and (t_i w) SN imply ((<t1,t2> p_i) w) SN
    for (int i = 1; i <= 2; ++i) {
      const TermPtr& ti = i == 1 ? t : u;
      if (!isSn(applySeq(ti, w), fuel).known) continue;
      sc.rep.casesRun++;
      sc.rep.details["item3"]++;
      TermPtr proj = applySeq(
          Term::app(Term::pair(t, u), i == 1 ? ETerm::proj1() : ETerm::proj2()),
          w);
      if (!isSn(proj, fuel).known)
        sc.fail("item 3: ((<t1,t2> p" + std::to_string(i) + ") w) not SN; w = " +
                    printSeq(w),
                proj, nullptr);
    }

    // item 4: t, u1, u2 SN and u_i[x_i:=t] SN imply (w_i t [x1.u1,x2.u2]) SN
    for (int i = 1; i <= 2; ++i) {
      const TermPtr& ui = i == 1 ? u : v;
      if (!isSn(subst(ui, "x1", t), fuel).known) continue;
      sc.rep.casesRun++;
      sc.rep.details["item4"]++;
      TermPtr inj = i == 1 ? Term::inl(sc.pool[1], t) : Term::inr(sc.pool[1], t);
      TermPtr caseTerm = Term::app(
          inj, ETerm::caseOf(sc.pool[0], "x1", u, "x1", v));
      if (!isSn(caseTerm, fuel).known)
        sc.fail("item 4: (w" + std::to_string(i) + " t [x.u1,x.u2]) not SN; t = " +
                    printTerm(t),
                caseTerm, nullptr);
    }

    // item 5: t[a:=*w] SN implies ((mu a.t) w) SN, plus the composition
    // identity t[a:=*w1][a:=*w'] = t[a:=*w]
    bool wMentionsA1 = false;
    for (const auto& e : w)
      if (freeMuVars(e).count("a1")) wMentionsA1 = true;
    if (!wMentionsA1) {
      TermPtr substd = structSubstSeq(t, "a1", w);
      sc.rep.casesRun++;
      sc.rep.details["item5"]++;
      if (!w.empty()) {
        TermPtr viaSingle = structSubst(t, "a1", w[0]);
        viaSingle = structSubstSeq(viaSingle, "a1", Seq(w.begin() + 1, w.end()));
        if (!alphaEq(substd, viaSingle))
          sc.fail("item 5: composition identity t[a:=*w1][a:=*w'] = t[a:=*w] "
                  "fails for w = " + printSeq(w),
                  t, nullptr);
      } else if (!alphaEq(substd, t)) {
        sc.fail("item 5: t[a:=*empty] differs from t", t, nullptr);
      }
      if (isSn(substd, fuel).known) {
        TermPtr muApp = applySeq(Term::mu("a1", muAnn, t), w);
        if (!isSn(muApp, fuel).known)
          sc.fail("item 5: ((mu a.t) w) not SN although t[a:=*w] is; w = " +
                      printSeq(w),
                  muApp, nullptr);
      }
    }
  });
}

// ---- delta_lemma: (t [x.(u w), y.(v w)]) SN implies ((t [x.u,y.v]) w) SN

void suiteDeltaLemma(SuiteCtx& sc) {
  std::vector<Seq> pool = niceSeqPool(sc);
  std::vector<Judgement> window;
  std::uint64_t caseIdx = 0;
  forEachJudgement(sc.cfg, [&](const Judgement& j) {
    sc.coverTerm(j.term());
    if (j.term()->size() > kLemmaParticipantSizeCap) return;
    window.push_back(j);
    if (window.size() > 3) window.erase(window.begin());
    if (window.size() < 3) return;
    const TermPtr& t = window[0].term();
    const TermPtr& u = window[1].term();
    const TermPtr& v = window[2].term();
    const Seq& w = pool[caseIdx++ % pool.size()];
    TermPtr premise = Term::app(
        t, ETerm::caseOf(sc.pool[0], "x1", applySeq(u, w), "x2", applySeq(v, w)));
    if (!isSn(premise, sc.cfg.fuel).known) return;
    sc.rep.casesRun++;
    TermPtr conclusion =
        applySeq(Term::app(t, ETerm::caseOf(sc.pool[0], "x1", u, "x2", v)), w);
    if (!isSn(conclusion, sc.cfg.fuel).known)
      sc.fail("((t [x.u,y.v]) w) not SN although (t [x.(u w),y.(v w)]) is; w = " +
                  printSeq(w),
              conclusion, nullptr);
  });
}

// ---- candidate_closure: member_test survives reduction

void suiteCandidateClosure(SuiteCtx& sc) {
  forEachJudgement(sc.cfg, [&](const Judgement& j) {
    sc.coverTerm(j.term());
    sc.rep.casesRun++;
    if (!memberTest(j.term(), j.type(), sc.cfg.depth, sc.cfg.fuel)) {
      sc.fail("typed term fails member_test at its own type", j.term(), j.type());
      return;
    }
    NormalizeResult nr = normalize(j.term(), Strategy::LeftmostOutermost,
                                   sc.cfg.fuel);
    std::vector<TermPtr> reductsToCheck;
    for (std::size_t i = 0; i < nr.trace.size() && i < 3; ++i)
      reductsToCheck.push_back(nr.trace[i].after);
    if (!nr.trace.empty()) reductsToCheck.push_back(nr.normalForm);
    for (const auto& t2 : reductsToCheck) {
      if (!memberTest(t2, j.type(), sc.cfg.depth, sc.cfg.fuel))
        sc.fail("member_test lost under reduction at reduct " + printTerm(t2),
                j.term(), j.type());
    }
  });
}

// ---- mu_N: mu a.t with a not free in t passes member_test at every type

void suiteMuN(SuiteCtx& sc) {
  std::uint64_t caseIdx = 0;
  forEachJudgement(sc.cfg, [&](const Judgement& j) {
    sc.coverTerm(j.term());
    const TermPtr& t = j.term();
    const TypePtr& ty = sc.pool[caseIdx++ % sc.pool.size()];
    std::string a = freshName("a", allMuNames(t));
    TermPtr muTerm = Term::mu(a, ty, t);
    sc.rep.casesRun++;
    if (!memberTest(muTerm, ty, sc.cfg.depth, sc.cfg.fuel))
      sc.fail("mu " + a + ".t fails member_test at " + printType(ty), muTerm, ty);
  });
}

// ---- adequation

void suiteAdequation(SuiteCtx& sc) {
  forEachJudgement(sc.cfg, [&](const Judgement& j) {
    sc.coverTerm(j.term());
    sc.rep.casesRun++;
    if (!adequationCheck(j, sc.cfg.depth, sc.cfg.fuel)) {
      auto pred = [&](const Judgement& cand) {
        return !adequationCheck(cand, sc.cfg.depth, sc.cfg.fuel);
      };
      sc.fail("adequation check failed at depth " + std::to_string(sc.cfg.depth),
              j.term(), j.type(), shrinkFor(j, pred));
    }
  });
}

}  // namespace

Judgement shrinkJudgement(const Judgement& j,
                          const std::function<bool(const Judgement&)>& stillFails) {
  Shrinker sh{stillFails};
  return sh.run(j);
}

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names = {
      "subject_reduction", "confluence",        "strong_normalization",
      "substitution_lemma", "nice_preservation", "int_lemma",
      "delta_lemma",        "candidate_closure", "mu_N",
      "adequation"};
  return names;
}

SuiteReport runSuite(const std::string& name, const GenConfig& cfg) {
  validate(cfg);
  auto start = std::chrono::steady_clock::now();
  SuiteCtx sc{cfg, poolOf(cfg), harnessContexts(cfg), {}};
  sc.rep.suiteName = name;
  sc.rep.header = headerString(cfg);
  for (const auto& fam : redexFamilies()) sc.rep.coverage[fam] = 0;

  if (name == "subject_reduction") suiteSubjectReduction(sc);
  else if (name == "confluence") suiteConfluence(sc);
  else if (name == "strong_normalization") suiteStrongNormalization(sc);
  else if (name == "substitution_lemma") suiteSubstitutionLemma(sc);
  else if (name == "nice_preservation") suiteNicePreservation(sc);
  else if (name == "int_lemma") suiteIntLemma(sc);
  else if (name == "delta_lemma") suiteDeltaLemma(sc);
  else if (name == "candidate_closure") suiteCandidateClosure(sc);
  else if (name == "mu_N") suiteMuN(sc);
  else if (name == "adequation") suiteAdequation(sc);
  else throw Error("unknown suite: " + name);

  sc.rep.runtimeMillis = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
  return sc.rep;
}

namespace {

OrderedJson reportJson(const SuiteReport& r) {
  OrderedJson o;
  o["suite"] = r.suiteName;
  o["header"] = r.header;
  o["cases_run"] = r.casesRun;
  o["coverage"] = r.coverage;
  o["details"] = r.details;
  OrderedJson fails = OrderedJson::array();
  for (const auto& f : r.failures) {
    OrderedJson fo;
    fo["what"] = f.what;
    fo["term"] = f.term;
    fo["type"] = f.type;
    fo["counterexample"] = f.counterexample;
    fails.push_back(std::move(fo));
  }
  o["failures"] = std::move(fails);
  o["runtime_millis"] = r.runtimeMillis;
  return o;
}

}  // namespace

std::string SuiteReport::toJson() const { return reportJson(*this).dump(2); }

std::string reportsToJson(const std::vector<SuiteReport>& reports) {
  OrderedJson o;
  OrderedJson arr = OrderedJson::array();
  for (const auto& r : reports) arr.push_back(reportJson(r));
  o["reports"] = std::move(arr);
  return o.dump(2);
}

}  // namespace lmu
