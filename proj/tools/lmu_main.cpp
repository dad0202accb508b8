// lmu: check, normalize and stress-test proof terms of classical natural
// deduction. Exit codes: 0 success, 1 check/suite failure, 2 usage or parse
// errors.

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "lmu/harness.hpp"

namespace {

using nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

struct TermInput {
  std::string term;
  std::string type;
  std::string gamma;
  std::string delta;
};

lmu::Contexts contextsOf(const TermInput& in) {
  lmu::Contexts ctx;
  ctx.gamma = lmu::parseContextDecls(in.gamma);
  ctx.delta = lmu::parseContextDecls(in.delta);
  return ctx;
}

int checkCorpusFile(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  int lineNo = 0;
  int mismatches = 0;
  std::string line;
  while (std::getline(f, line)) {
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json o;
    try {
      o = json::parse(line);
    } catch (const json::exception& e) {
      std::cerr << "line " << lineNo << ": bad JSON: " << e.what() << "\n";
      return 2;
    }
    lmu::Contexts ctx;
    lmu::TermPtr term;
    lmu::TypePtr type;
    std::string expect;
    try {
      for (auto it = o.at("ctx_gamma").begin(); it != o.at("ctx_gamma").end(); ++it)
        ctx.gamma[it.key()] = lmu::parseType(it.value().get<std::string>());
      for (auto it = o.at("ctx_delta").begin(); it != o.at("ctx_delta").end(); ++it)
        ctx.delta[it.key()] = lmu::parseType(it.value().get<std::string>());
      term = lmu::parseTerm(o.at("term").get<std::string>());
      type = lmu::parseType(o.at("type").get<std::string>());
      expect = o.at("expect").get<std::string>();
    } catch (const std::exception& e) {
      std::cerr << "line " << lineNo << ": " << e.what() << "\n";
      return 2;
    }
    bool wellTyped = true;
    std::string detail;
    try {
      lmu::check(ctx, term, type);
    } catch (const lmu::TypeError& e) {
      wellTyped = false;
      detail = e.what();
    }
    bool expected = expect == "well-typed";
    if (wellTyped == expected) {
      std::cout << "line " << lineNo << ": ok (" << expect << ")\n";
    } else {
      ++mismatches;
      std::cout << "line " << lineNo << ": FAIL expected " << expect << ", got "
                << (wellTyped ? "well-typed" : "ill-typed: " + detail) << "\n";
    }
  }
  return mismatches == 0 ? 0 : 1;
}

int checkSingle(const TermInput& in) {
  lmu::Contexts ctx = contextsOf(in);
  lmu::TermPtr t = lmu::parseTerm(in.term);
  try {
    if (in.type.empty()) {
      std::cout << lmu::printType(lmu::infer(ctx, t)) << "\n";
    } else {
      lmu::check(ctx, t, lmu::parseType(in.type));
      std::cout << "ok: " << lmu::printTerm(t) << " : " << in.type << "\n";
    }
    return 0;
  } catch (const lmu::TypeError& e) {
    std::cout << "FAIL: " << e.what() << "\n";
    return 1;
  }
}

std::string readTermSource(const std::string& file, const std::string& term) {
  if (!term.empty()) return term;
  std::ifstream f(file);
  if (!f) throw lmu::Error("cannot open " + file);
  std::string src((std::istreambuf_iterator<char>(f)),
                  std::istreambuf_iterator<char>());
  return src;
}

OrderedJson corpusLine(const lmu::Judgement& j) {
  OrderedJson o;
  OrderedJson g = OrderedJson::object();
  for (const auto& [x, ty] : j.ctx().gamma) g[x] = lmu::printType(ty);
  OrderedJson d = OrderedJson::object();
  for (const auto& [a, ty] : j.ctx().delta) d[a] = lmu::printType(ty);
  o["ctx_gamma"] = std::move(g);
  o["ctx_delta"] = std::move(d);
  o["term"] = lmu::printTerm(j.term());
  o["type"] = lmu::printType(j.type());
  o["expect"] = "well-typed";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for classical natural deduction proof terms"};
  app.require_subcommand(1);

  TermInput in;
  std::string file;
  std::string strategy = "lo";
  bool trace = false;
  std::uint64_t fuel = lmu::kDefaultFuel;
  std::uint64_t seed = 42;

  auto* check = app.add_subcommand("check", "typecheck a corpus file or a term");
  check->add_option("file", file, "corpus file (JSON lines)");
  check->add_option("--term", in.term, "single term to check");
  check->add_option("--type", in.type, "expected type for --term");
  check->add_option("--gamma", in.gamma, "lambda context, e.g. \"x:P, y:P -> Q\"");
  check->add_option("--delta", in.delta, "mu context, e.g. \"a:P\"");

  auto* normalize = app.add_subcommand("normalize", "reduce a term to normal form");
  normalize->add_option("file", file, "file containing one term");
  normalize->add_option("--term", in.term, "term to normalize");
  normalize->add_option("--gamma", in.gamma, "lambda context");
  normalize->add_option("--delta", in.delta, "mu context");
  normalize->add_option("--strategy", strategy, "lo | random | exhaustive")
      ->check(CLI::IsMember({"lo", "random", "exhaustive"}));
  normalize->add_flag("--trace", trace, "print one line per reduction step");
  normalize->add_option("--fuel", fuel, "max reduction steps / node expansions");
  normalize->add_option("--seed", seed, "rng seed for --strategy random");

  auto* etaCmd = app.add_subcommand("eta", "longest reduction sequence length");
  etaCmd->add_option("--term", in.term, "term")->required();
  etaCmd->add_option("--gamma", in.gamma, "lambda context");
  etaCmd->add_option("--delta", in.delta, "mu context");
  etaCmd->add_option("--fuel", fuel, "node expansion budget");

  lmu::GenConfig cfg;
  std::string suiteName = "all";
  std::string outPath;
  auto* suite = app.add_subcommand("suite", "run property suites");
  suite->add_option("--name", suiteName, "suite name or 'all'");
  suite->add_option("--max-size", cfg.maxSize, "exhaustive enumeration size bound");
  suite->add_option("--samples", cfg.sampleCount, "random samples on top");
  suite->add_option("--sample-max-size", cfg.sampleMaxSize, "sampled term size budget");
  suite->add_option("--seed", cfg.seed, "rng seed");
  suite->add_option("--depth", cfg.depth, "battery depth (max 3)");
  suite->add_option("--fuel", cfg.fuel, "SN fuel");
  suite->add_option("--out", outPath, "write the JSON report here");

  auto* gen = app.add_subcommand("gen", "generate a corpus of typed terms");
  int genCount = 100;
  gen->add_option("--max-size", cfg.sampleMaxSize, "term size budget");
  gen->add_option("--samples", genCount, "number of terms");
  gen->add_option("--seed", cfg.seed, "rng seed");
  gen->add_option("--out", outPath, "corpus file to write (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (check->parsed()) {
      if (!file.empty()) return checkCorpusFile(file);
      if (in.term.empty()) {
        std::cerr << "check needs a corpus file or --term\n";
        return 2;
      }
      return checkSingle(in);
    }

    if (normalize->parsed()) {
      lmu::TermPtr t = lmu::parseTerm(readTermSource(file, in.term));
      if (!in.gamma.empty() || !in.delta.empty()) {
        try {
          lmu::infer(contextsOf(in), t);
        } catch (const lmu::TypeError& e) {
          std::cout << "FAIL: " << e.what() << "\n";
          return 1;
        }
      }
      lmu::Strategy st = strategy == "random"     ? lmu::Strategy::Random
                         : strategy == "exhaustive" ? lmu::Strategy::Exhaustive
                                                    : lmu::Strategy::LeftmostOutermost;
      lmu::NormalizeResult r = lmu::normalize(t, st, fuel, seed);
      if (trace)
        for (const auto& e : r.trace) std::cout << lmu::formatTraceEntry(e) << "\n";
      std::cout << lmu::printTerm(r.normalForm) << "\n";
      return 0;
    }

    if (etaCmd->parsed()) {
      lmu::TermPtr t = lmu::parseTerm(in.term);
      lmu::SnResult r = lmu::isSn(t, fuel);
      if (!r.known) {
        std::cout << "unknown: fuel " << fuel << " exhausted or divergence found\n";
        return 1;
      }
      std::cout << "eta = " << r.eta << "\n";
      std::cout << "graph nodes = " << r.graphSize << "\n";
      return 0;
    }

    if (suite->parsed()) {
      std::vector<std::string> names;
      if (suiteName == "all") {
        names = lmu::suiteNames();
      } else {
        const auto& all = lmu::suiteNames();
        if (std::find(all.begin(), all.end(), suiteName) == all.end()) {
          std::cerr << "unknown suite: " << suiteName << "\n";
          return 2;
        }
        names.push_back(suiteName);
      }
      std::vector<lmu::SuiteReport> reports;
      bool anyFailed = false;
      for (const auto& n : names) {
        lmu::SuiteReport r = lmu::runSuite(n, cfg);
        anyFailed |= !r.passed();
        std::cout << "suite " << r.suiteName << ": "
                  << (r.passed() ? "PASS" : "FAIL") << " (" << r.casesRun
                  << " cases, " << r.failures.size() << " failures, "
                  << r.runtimeMillis << " ms)\n";
        for (const auto& fl : r.failures)
          std::cout << "  " << fl.what
                    << (fl.term.empty() ? "" : "\n    term: " + fl.term)
                    << (fl.counterexample.empty()
                            ? ""
                            : "\n    minimized: " + fl.counterexample)
                    << "\n";
        reports.push_back(std::move(r));
      }
      if (!outPath.empty()) {
        std::ofstream out(outPath);
        if (!out) {
          std::cerr << "cannot write " << outPath << "\n";
          return 2;
        }
        out << lmu::reportsToJson(reports) << "\n";
      }
      return anyFailed ? 1 : 0;
    }

    if (gen->parsed()) {
      cfg.sampleCount = genCount;
      std::ostream* out = &std::cout;
      std::ofstream fileOut;
      if (!outPath.empty()) {
        fileOut.open(outPath);
        if (!fileOut) {
          std::cerr << "cannot write " << outPath << "\n";
          return 2;
        }
        out = &fileOut;
      }
      std::map<int, int> histogram;
      lmu::sampleTyped(cfg, [&](const lmu::Judgement& j) {
        *out << corpusLine(j).dump() << "\n";
        histogram[j.term()->size()]++;
      });
      for (const auto& [size, count] : histogram)
        std::cerr << "size " << size << ": " << count << "\n";
      return 0;
    }
  } catch (const lmu::SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const lmu::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
